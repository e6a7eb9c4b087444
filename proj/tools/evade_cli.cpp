#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "evade/harness/csvio.hpp"
#include "evade/harness/sweep.hpp"
#include "evade/learner/train.hpp"
#include "evade/strategy.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace evade;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeAbort = 2;

// Flat JSON config file; explicit command-line flags win over file values.
json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
  return json::parse(in);
}

template <typename T>
void apply_config(const CLI::App& app, const json& config,
                  const std::string& flag, const std::string& key, T& value) {
  const CLI::Option* opt = app.get_option_no_throw(flag);
  if (opt != nullptr && opt->count() > 0) return;  // flag wins
  if (config.contains(key)) value = config.at(key).get<T>();
}

AircraftParams aircraft_params_from_config(const json& config) {
  AircraftParams params;
  if (!config.contains("aircraft")) return params;
  const json& a = config.at("aircraft");
  params.max_roll_rate = a.value("max_roll_rate", params.max_roll_rate);
  params.max_pitch_rate = a.value("max_pitch_rate", params.max_pitch_rate);
  params.max_yaw_rate = a.value("max_yaw_rate", params.max_yaw_rate);
  params.max_load_factor = a.value("max_load_factor", params.max_load_factor);
  params.thrust_max = a.value("thrust_max", params.thrust_max);
  params.mass = a.value("mass", params.mass);
  params.drag_parasitic = a.value("drag_parasitic", params.drag_parasitic);
  params.drag_induced = a.value("drag_induced", params.drag_induced);
  params.min_speed = a.value("min_speed", params.min_speed);
  params.max_speed = a.value("max_speed", params.max_speed);
  return params;
}

json aircraft_params_to_json(const AircraftParams& params) {
  return {{"max_roll_rate", params.max_roll_rate},
          {"max_pitch_rate", params.max_pitch_rate},
          {"max_yaw_rate", params.max_yaw_rate},
          {"max_load_factor", params.max_load_factor},
          {"thrust_max", params.thrust_max},
          {"mass", params.mass},
          {"drag_parasitic", params.drag_parasitic},
          {"drag_induced", params.drag_induced},
          {"min_speed", params.min_speed},
          {"max_speed", params.max_speed}};
}

void echo_config(const fs::path& out_dir, const json& resolved) {
  std::ofstream out(out_dir / "config.json");
  out << resolved.dump(2) << "\n";
}

SweepGrid grid_from_json(const json& j) {
  auto intervals = [](const json& arr) {
    std::vector<Interval> out;
    for (const auto& pair : arr) out.push_back({pair.at(0), pair.at(1)});
    return out;
  };
  SweepGrid grid;
  grid.aircraft_speed = intervals(j.at("aircraft_speed"));
  grid.missile_speed = intervals(j.at("missile_speed"));
  grid.range = intervals(j.at("range"));
  for (const auto& pair : j.at("azimuth_deg")) {
    grid.azimuth.push_back({deg2rad(pair.at(0)), deg2rad(pair.at(1))});
  }
  grid.tests_per_cell = j.value("tests_per_cell", 1);
  return grid;
}

SweepGrid resolve_grid(const std::string& name) {
  if (name == "desk") return desk_grid();
  if (name == "paper") return paper_grid();
  return grid_from_json(load_config_file(name));
}

struct TrainCli {
  std::string task;
  std::string out_dir;
  std::string warm_start;
  std::string config_path;
  int episodes = 1000;
  std::uint64_t seed = 0;
  double hz = 200.0;
};

int cmd_train(const TrainCli& cli, const json& config) {
  auto task = task_from_name(cli.task);
  if (!task) {
    std::cerr << "unknown task '" << cli.task
              << "' (expected steep-turn, short-distance, small-azimuth, "
                 "large-azimuth, or baseline)\n";
    return kExitConfigError;
  }
  if (*task == TaskKind::ShortDistance && cli.warm_start.empty()) {
    std::cerr << "short-distance training is a curriculum stage: pass "
                 "--warm-start <steep-turn checkpoint>\n";
    return kExitConfigError;
  }
  std::optional<PolicyParameters> warm;
  if (!cli.warm_start.empty()) {
    if (!fs::exists(cli.warm_start)) {
      std::cerr << "warm-start checkpoint not found: " << cli.warm_start << "\n";
      return kExitConfigError;
    }
    warm = load_checkpoint(cli.warm_start);
  }

  TrainConfig train_config;
  train_config.seed = cli.seed;
  train_config.episodes = cli.episodes;
  train_config.control_hz = cli.hz;
  AircraftParams aircraft = aircraft_params_from_config(config);

  fs::create_directories(cli.out_dir);
  json resolved = {{"command", "train"},
                   {"task", cli.task},
                   {"episodes", cli.episodes},
                   {"seed", cli.seed},
                   {"hz", cli.hz},
                   {"warm_start", cli.warm_start},
                   {"aircraft", aircraft_params_to_json(aircraft)}};
  echo_config(cli.out_dir, resolved);

  TaskEnv env(*task, derive_seed(cli.seed, 0xe17), cli.hz, aircraft);
  int printed = 0;
  TrainResult result =
      train(env, train_config, warm ? &*warm : nullptr,
            [&](const EpisodeCurvePoint& point) {
              if (point.episode - printed >= 100 || point.episode == 0) {
                std::fprintf(stderr, "episode %d reward %.1f steps %d\n",
                             point.episode, point.accumulated_reward,
                             point.steps);
                printed = point.episode;
              }
            });
  if (result.diverged) {
    std::cerr << "training aborted: " << result.diagnostic << "\n";
    return kExitRuntimeAbort;
  }
  fs::path ckpt = fs::path(cli.out_dir) / "checkpoint.json";
  save_checkpoint(result.params, ckpt.string(), cli.seed,
                  train_config_hash(train_config));
  write_curve_csv((fs::path(cli.out_dir) / "curve.csv").string(), result.curve);
  std::cout << "checkpoint: " << ckpt.string() << "\n";
  return kExitOk;
}

struct EvalCli {
  std::string out_dir;
  std::string bundle;
  std::string steep_turn;
  std::string baseline_rl;
  std::string grid = "desk";
  std::string law = "pn";
  bool paired = true;
  std::uint64_t seed = 0;
  double hz = 200.0;
  int jobs = 1;
};

int cmd_eval(const EvalCli& cli, const json& config) {
  std::vector<StrategyFactory> factories;
  std::vector<std::string> names;
  if (!cli.bundle.empty()) {
    StrategyBundle bundle = load_bundle(cli.bundle);
    factories.push_back(
        [bundle] { return std::make_unique<MultiStageStrategy>(bundle); });
    names.push_back("multi-stage");
  }
  if (!cli.steep_turn.empty()) {
    PolicyParameters params = load_checkpoint(cli.steep_turn);
    factories.push_back([params] {
      return std::make_unique<SinglePolicyStrategy>(params, "steep-turn");
    });
    names.push_back("steep-turn");
  }
  if (!cli.baseline_rl.empty()) {
    PolicyParameters params = load_checkpoint(cli.baseline_rl);
    factories.push_back([params] {
      return std::make_unique<SinglePolicyStrategy>(params, "baseline-rl");
    });
    names.push_back("baseline-rl");
  }
  if (factories.empty()) {
    std::cerr << "no strategies given: pass --bundle, --steep-turn, or "
                 "--baseline-rl\n";
    return kExitConfigError;
  }

  SweepOptions options;
  options.hz = cli.hz;
  options.paired = cli.paired;
  options.master_seed = cli.seed;
  options.jobs = cli.jobs;
  options.law = cli.law == "apn" ? GuidanceLaw::APN : GuidanceLaw::PN;
  options.aircraft_params = aircraft_params_from_config(config);
  SweepGrid grid = resolve_grid(cli.grid);

  fs::create_directories(cli.out_dir);
  json resolved = {{"command", "eval"},
                   {"bundle", cli.bundle},
                   {"steep_turn", cli.steep_turn},
                   {"baseline_rl", cli.baseline_rl},
                   {"grid", cli.grid},
                   {"law", cli.law},
                   {"paired", cli.paired},
                   {"seed", cli.seed},
                   {"hz", cli.hz},
                   {"jobs", cli.jobs},
                   {"scenarios", grid.scenario_count()},
                   {"aircraft", aircraft_params_to_json(options.aircraft_params)}};
  echo_config(cli.out_dir, resolved);

  auto results = success_ratio_sweep(grid, factories, options);
  write_sweep_csv((fs::path(cli.out_dir) / "sweep.csv").string(), results);

  json summary;
  summary["paired"] = cli.paired;
  summary["law"] = cli.law;
  summary["config"] = resolved;
  for (const auto& res : results) {
    // the paper splits out detections beyond the short-distance threshold
    int far_tests = 0, far_successes = 0;
    for (const auto& cell : res.cells) {
      if (cell.range.lo >= 8000.0) {
        far_tests += cell.tests;
        far_successes += cell.successes;
      }
    }
    summary["strategies"].push_back(
        {{"name", res.strategy},
         {"tests", res.tests},
         {"successes", res.successes},
         {"success_ratio", res.success_ratio},
         {"success_ratio_beyond_8km",
          far_tests > 0 ? static_cast<double>(far_successes) / far_tests : 0.0},
         {"ground_impacts", res.ground_impacts},
         {"mean_max_missile_overload_g", res.mean_max_missile_overload_g},
         {"scenario_hash", res.scenario_hash}});
    std::cout << res.strategy << ": " << res.successes << "/" << res.tests
              << " = " << format_number(res.success_ratio * 100.0) << "%\n";
  }
  std::ofstream out(fs::path(cli.out_dir) / "summary.json");
  out << summary.dump(2) << "\n";
  return kExitOk;
}

struct ReplayCli {
  std::string out_dir;
  std::string bundle;
  std::string checkpoint;
  std::string law = "pn";
  std::uint64_t scenario_seed = 0;
  double hz = 200.0;
  double range = -1.0;
  double azimuth_deg = 361.0;
  std::string reward_task;
};

int cmd_replay(const ReplayCli& cli, const json& config) {
  std::unique_ptr<Strategy> strategy;
  if (!cli.bundle.empty()) {
    strategy = std::make_unique<MultiStageStrategy>(load_bundle(cli.bundle));
  } else if (!cli.checkpoint.empty()) {
    strategy = std::make_unique<SinglePolicyStrategy>(
        load_checkpoint(cli.checkpoint), "policy");
  } else {
    std::cerr << "pass --bundle or --checkpoint\n";
    return kExitConfigError;
  }

  Rng rng(cli.scenario_seed);
  ScenarioBounds bounds;
  ScenarioSpec spec = sample_scenario(
      rng, bounds, {}, cli.law == "apn" ? GuidanceLaw::APN : GuidanceLaw::PN);
  spec.seed = cli.scenario_seed;
  if (cli.range > 0.0) spec.missile_range = cli.range;
  if (cli.azimuth_deg <= 180.0) spec.missile_azimuth = deg2rad(cli.azimuth_deg);

  EpisodeOptions options;
  options.hz = cli.hz;
  options.aircraft_params = aircraft_params_from_config(config);
  options.terminations = test_terminations(cli.hz);
  options.record_trajectory = true;
  if (!cli.reward_task.empty()) {
    auto task = task_from_name(cli.reward_task);
    if (!task) {
      std::cerr << "unknown reward task '" << cli.reward_task << "'\n";
      return kExitConfigError;
    }
    options.reward = *task;
  }

  fs::create_directories(cli.out_dir);
  json resolved = {{"command", "replay"},
                   {"bundle", cli.bundle},
                   {"checkpoint", cli.checkpoint},
                   {"scenario_seed", cli.scenario_seed},
                   {"law", cli.law},
                   {"hz", cli.hz},
                   {"aircraft", aircraft_params_to_json(options.aircraft_params)}};
  echo_config(cli.out_dir, resolved);

  EpisodeRecord record = run_episode(spec, *strategy, options);
  write_trajectory_csv((fs::path(cli.out_dir) / "trajectory.csv").string(),
                       record);
  json summary = {{"outcome", outcome_name(record.outcome)},
                  {"termination", record.termination},
                  {"steps", record.steps},
                  {"min_range", record.min_range},
                  {"max_missile_overload_g", record.max_missile_overload_g},
                  {"accumulated_reward", record.accumulated_reward}};
  std::ofstream out(fs::path(cli.out_dir) / "summary.json");
  out << summary.dump(2) << "\n";
  std::cout << outcome_name(record.outcome) << " after " << record.steps
            << " steps, min range " << format_number(record.min_range)
            << " m\n";
  return kExitOk;
}

struct AnalyzeCli {
  std::string study;
  std::string checkpoint;
  std::string out_dir;
  int episodes = 200;
  std::uint64_t seed = 0;
  double hz = 200.0;
};

int cmd_analyze(const AnalyzeCli& cli, const json& config) {
  if (!fs::exists(cli.checkpoint)) {
    std::cerr << "checkpoint not found: " << cli.checkpoint << "\n";
    return kExitConfigError;
  }
  PolicyParameters params = load_checkpoint(cli.checkpoint);
  StrategyFactory factory = [params] {
    return std::make_unique<SinglePolicyStrategy>(params, "short-distance");
  };
  AircraftParams aircraft = aircraft_params_from_config(config);

  fs::create_directories(cli.out_dir);
  json resolved = {{"command", "analyze"},      {"study", cli.study},
                   {"checkpoint", cli.checkpoint}, {"episodes", cli.episodes},
                   {"seed", cli.seed},          {"hz", cli.hz}};
  echo_config(cli.out_dir, resolved);

  if (cli.study == "roll-at-range") {
    RollAtRangeResult result = roll_at_range_analysis(
        factory, cli.episodes, cli.seed, cli.hz, 12000.0, 8000.0, aircraft);
    std::ofstream out(fs::path(cli.out_dir) / "rolls.csv");
    out << "roll_deg\n";
    for (double roll : result.rolls) out << format_number(rad2deg(roll)) << "\n";
    std::cout << "reached 8 km in " << result.reached << "/" << result.episodes
              << " episodes; |roll| within 85+-15 deg: "
              << format_number(result.fraction_near_target * 100.0) << "%\n";
    return kExitOk;
  }
  if (cli.study == "roll-condition") {
    RollConditionResult result = roll_condition_analysis(
        factory, {deg2rad(-85.0), 0.0, deg2rad(85.0)}, cli.episodes, cli.seed,
        cli.hz, 8000.0, aircraft);
    std::ofstream out(fs::path(cli.out_dir) / "roll_condition.csv");
    out << "initial_roll_deg,tests,success_ratio\n";
    for (std::size_t i = 0; i < result.initial_rolls.size(); ++i) {
      out << format_number(rad2deg(result.initial_rolls[i])) << ','
          << result.tests[i] << ','
          << format_number(result.success_ratios[i]) << "\n";
      std::cout << "roll " << format_number(rad2deg(result.initial_rolls[i]))
                << " deg: ratio "
                << format_number(result.success_ratios[i]) << "\n";
    }
    return kExitOk;
  }
  std::cerr << "unknown study '" << cli.study
            << "' (expected roll-at-range or roll-condition)\n";
  return kExitConfigError;
}

struct BundleCli {
  std::string large, small, short_ckpt, out;
};

int cmd_bundle(const BundleCli& cli) {
  for (const std::string& path : {cli.large, cli.small, cli.short_ckpt}) {
    if (!fs::exists(path)) {
      std::cerr << "checkpoint not found: " << path << "\n";
      return kExitConfigError;
    }
  }
  fs::create_directories(fs::path(cli.out).parent_path());
  save_bundle_manifest(cli.out, cli.large, cli.small, cli.short_ckpt);
  std::cout << "bundle manifest: " << cli.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Missile-evasion training and evaluation workbench"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags win)")
      ->expected(1);

  TrainCli train_cli;
  CLI::App* train_cmd = app.add_subcommand("train", "Train one policy");
  train_cmd->add_option("--task", train_cli.task, "Policy to train")->required();
  train_cmd->add_option("--episodes", train_cli.episodes, "Episode budget");
  train_cmd->add_option("--seed", train_cli.seed, "Master seed");
  train_cmd->add_option("--out", train_cli.out_dir, "Output directory")
      ->required();
  train_cmd->add_option("--warm-start", train_cli.warm_start,
                        "Checkpoint to initialize from");
  train_cmd->add_option("--hz", train_cli.hz, "Simulation rate");

  EvalCli eval_cli;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Success-ratio sweep");
  eval_cmd->add_option("--out", eval_cli.out_dir, "Output directory")->required();
  eval_cmd->add_option("--bundle", eval_cli.bundle, "Multi-stage bundle manifest");
  eval_cmd->add_option("--steep-turn", eval_cli.steep_turn,
                       "Steep-turn checkpoint");
  eval_cmd->add_option("--baseline-rl", eval_cli.baseline_rl,
                       "Baseline RL checkpoint");
  eval_cmd->add_option("--grid", eval_cli.grid, "desk, paper, or a JSON file");
  eval_cmd->add_option("--law", eval_cli.law, "pn or apn")
      ->check(CLI::IsMember({"pn", "apn"}));
  eval_cmd->add_flag("--paired,!--no-paired", eval_cli.paired,
                     "Identical scenarios across strategies");
  eval_cmd->add_option("--seed", eval_cli.seed, "Master seed");
  eval_cmd->add_option("--hz", eval_cli.hz, "Simulation rate");
  eval_cmd->add_option("--jobs", eval_cli.jobs, "Worker threads");

  ReplayCli replay_cli;
  CLI::App* replay_cmd =
      app.add_subcommand("replay", "Export one episode trajectory");
  replay_cmd->add_option("--out", replay_cli.out_dir, "Output directory")
      ->required();
  replay_cmd->add_option("--bundle", replay_cli.bundle, "Bundle manifest");
  replay_cmd->add_option("--checkpoint", replay_cli.checkpoint,
                         "Single-policy checkpoint");
  replay_cmd->add_option("--scenario-seed", replay_cli.scenario_seed,
                         "Scenario seed");
  replay_cmd->add_option("--law", replay_cli.law, "pn or apn")
      ->check(CLI::IsMember({"pn", "apn"}));
  replay_cmd->add_option("--hz", replay_cli.hz, "Simulation rate");
  replay_cmd->add_option("--range", replay_cli.range, "Override range (m)");
  replay_cmd->add_option("--azimuth-deg", replay_cli.azimuth_deg,
                         "Override azimuth (deg)");
  replay_cmd->add_option("--reward", replay_cli.reward_task,
                         "Log per-term rewards of this task");

  AnalyzeCli analyze_cli;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "Short-distance diagnostics");
  analyze_cmd->add_option("--study", analyze_cli.study,
                          "roll-at-range or roll-condition")
      ->required();
  analyze_cmd
      ->add_option("--checkpoint", analyze_cli.checkpoint,
                   "Short-distance checkpoint")
      ->required();
  analyze_cmd->add_option("--out", analyze_cli.out_dir, "Output directory")
      ->required();
  analyze_cmd->add_option("-n,--episodes", analyze_cli.episodes,
                          "Episodes per condition");
  analyze_cmd->add_option("--seed", analyze_cli.seed, "Master seed");
  analyze_cmd->add_option("--hz", analyze_cli.hz, "Simulation rate");

  BundleCli bundle_cli;
  CLI::App* bundle_cmd =
      app.add_subcommand("bundle", "Write a multi-stage bundle manifest");
  bundle_cmd->add_option("--large", bundle_cli.large, "Large-azimuth checkpoint")
      ->required();
  bundle_cmd->add_option("--small", bundle_cli.small, "Small-azimuth checkpoint")
      ->required();
  bundle_cmd->add_option("--short", bundle_cli.short_ckpt,
                         "Short-distance checkpoint")
      ->required();
  bundle_cmd->add_option("--out", bundle_cli.out, "Manifest path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    json config;
    if (!config_path.empty()) config = load_config_file(config_path);

    if (train_cmd->parsed()) {
      apply_config(*train_cmd, config, "--task", "task", train_cli.task);
      apply_config(*train_cmd, config, "--episodes", "episodes",
                   train_cli.episodes);
      apply_config(*train_cmd, config, "--seed", "seed", train_cli.seed);
      apply_config(*train_cmd, config, "--hz", "hz", train_cli.hz);
      apply_config(*train_cmd, config, "--warm-start", "warm_start",
                   train_cli.warm_start);
      return cmd_train(train_cli, config);
    }
    if (eval_cmd->parsed()) {
      apply_config(*eval_cmd, config, "--grid", "grid", eval_cli.grid);
      apply_config(*eval_cmd, config, "--law", "law", eval_cli.law);
      apply_config(*eval_cmd, config, "--seed", "seed", eval_cli.seed);
      apply_config(*eval_cmd, config, "--hz", "hz", eval_cli.hz);
      apply_config(*eval_cmd, config, "--jobs", "jobs", eval_cli.jobs);
      return cmd_eval(eval_cli, config);
    }
    if (replay_cmd->parsed()) {
      apply_config(*replay_cmd, config, "--hz", "hz", replay_cli.hz);
      apply_config(*replay_cmd, config, "--law", "law", replay_cli.law);
      return cmd_replay(replay_cli, config);
    }
    if (analyze_cmd->parsed()) {
      apply_config(*analyze_cmd, config, "--hz", "hz", analyze_cli.hz);
      apply_config(*analyze_cmd, config, "-n", "episodes",
                   analyze_cli.episodes);
      return cmd_analyze(analyze_cli, config);
    }
    if (bundle_cmd->parsed()) return cmd_bundle(bundle_cli);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeAbort;
  }
  return kExitConfigError;
}
