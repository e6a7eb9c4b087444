#include "evade/harness/episode.hpp"

#include <cmath>

namespace evade {

const char* task_name(TaskKind task) {
  switch (task) {
    case TaskKind::SteepTurn: return "steep-turn";
    case TaskKind::ShortDistance: return "short-distance";
    case TaskKind::SmallAzimuth: return "small-azimuth";
    case TaskKind::LargeAzimuth: return "large-azimuth";
    case TaskKind::Baseline: return "baseline";
  }
  return "?";
}

std::optional<TaskKind> task_from_name(const std::string& name) {
  for (TaskKind task :
       {TaskKind::SteepTurn, TaskKind::ShortDistance, TaskKind::SmallAzimuth,
        TaskKind::LargeAzimuth, TaskKind::Baseline}) {
    if (name == task_name(task)) return task;
  }
  return std::nullopt;
}

const char* outcome_name(EpisodeOutcome outcome) {
  switch (outcome) {
    case EpisodeOutcome::Hit: return "Hit";
    case EpisodeOutcome::Survived: return "Survived";
    case EpisodeOutcome::GroundImpact: return "GroundImpact";
  }
  return "?";
}

TerminationRules training_terminations(TaskKind task, double hz) {
  TerminationRules rules;
  rules.max_steps = static_cast<int>(std::lround(37.5 * hz));  // 7500 at 200 Hz
  if (task == TaskKind::SmallAzimuth || task == TaskKind::LargeAzimuth) {
    rules.stop_below_range = 5000.0;
  }
  if (task == TaskKind::LargeAzimuth) {
    rules.stop_below_azimuth = deg2rad(15.0);
  }
  return rules;
}

TerminationRules test_terminations(double hz) {
  TerminationRules rules;
  rules.max_steps = static_cast<int>(std::lround(25.0 * hz));  // 5000 at 200 Hz
  return rules;
}

RewardBreakdown RewardEvaluator::step_reward(const WorldState& world,
                                             const StepInfo& info) const {
  const AircraftState& a = world.aircraft;
  switch (task_) {
    case TaskKind::SteepTurn:
      return reward_steep_turn(a.roll, a.pitch, info.rel.side_sign, steep_);
    case TaskKind::ShortDistance:
      return reward_short_distance(a.roll, a.pitch, info.rel.side_sign,
                                   info.smoothed_signed_los_rate, short_);
    case TaskKind::SmallAzimuth:
      return reward_small_azimuth(a.roll, a.pitch, info.rel.azimuth, a.speed,
                                  small_);
    case TaskKind::LargeAzimuth:
      return reward_large_azimuth(a.roll, a.pitch, info.rel.side_sign, a.speed,
                                  info.rel.range, large_);
    case TaskKind::Baseline:
      return reward_baseline_step(info.rel.los_rate, info.missile_overload_g,
                                  a.pitch, a.roll, baseline_);
  }
  return {};
}

RewardBreakdown RewardEvaluator::terminal_reward(double min_range,
                                                 double final_range) const {
  if (task_ != TaskKind::Baseline) return {};
  return reward_baseline_terminal(min_range, final_range, baseline_);
}

namespace {

struct StopCheck {
  bool done = false;
  EpisodeOutcome outcome = EpisodeOutcome::Survived;
  const char* reason = "";
};

StopCheck evaluate_stop(const StepInfo& info, const TerminationRules& rules,
                        int steps) {
  if (info.ground_impact) return {true, EpisodeOutcome::GroundImpact, "ground"};
  if (info.hit) return {true, EpisodeOutcome::Hit, "hit"};
  if (info.outcome == Outcome::Expired) {
    return {true, EpisodeOutcome::Survived, "expired"};
  }
  if (rules.stop_below_range && info.rel.range < *rules.stop_below_range) {
    return {true, EpisodeOutcome::Survived, "range"};
  }
  if (rules.stop_below_azimuth &&
      std::abs(info.rel.azimuth) < *rules.stop_below_azimuth) {
    return {true, EpisodeOutcome::Survived, "azimuth"};
  }
  if (steps >= rules.max_steps) {
    return {true, EpisodeOutcome::Survived, "step_cap"};
  }
  return {};
}

}  // namespace

EpisodeRecord run_episode(const ScenarioSpec& spec, Strategy& strategy,
                          const EpisodeOptions& options) {
  WorldSim sim(spec, options.aircraft_params, 1.0 / options.hz);
  std::optional<RewardEvaluator> rewards;
  if (options.reward) rewards.emplace(*options.reward);

  EpisodeRecord record;
  record.spec = spec;
  record.min_range =
      (sim.world().missile.position - sim.world().aircraft.position).norm();
  strategy.begin_episode();

  for (;;) {
    Observation obs = sim.observation();
    RelativeGeometry rel = sim.current_geometry();
    ControlAction action = strategy.decide(obs, rel);
    StepInfo info = sim.step(action);
    record.steps += 1;
    record.min_range = std::min(record.min_range, info.cpa_range);
    record.max_missile_overload_g =
        std::max(record.max_missile_overload_g, info.missile_overload_g);

    StopCheck stop = evaluate_stop(info, options.terminations, record.steps);

    RewardBreakdown reward;
    if (rewards) {
      reward = rewards->step_reward(sim.world(), info);
      if (stop.done) {
        double final_range =
            stop.outcome == EpisodeOutcome::Hit
                ? std::min(info.cpa_range, info.rel.range)
                : info.rel.range;
        RewardBreakdown terminal =
            rewards->terminal_reward(record.min_range, final_range);
        reward.distance_terminal += terminal.distance_terminal;
        reward.total = reward.sum_terms();
      }
      record.accumulated_reward += reward.total;
    }

    if (options.record_trajectory) {
      StepRow row;
      row.t = sim.world().time;
      row.aircraft = sim.world().aircraft;
      row.missile = sim.world().missile;
      row.stage = strategy.current_stage();
      row.action = action;
      row.reward = reward;
      row.range = info.rel.range;
      row.los_rate = info.rel.los_rate;
      row.aircraft_load_g = info.aircraft_load_g;
      row.missile_overload_g = info.missile_overload_g;
      record.rows.push_back(row);
    }

    if (stop.done) {
      record.outcome = stop.outcome;
      record.termination = stop.reason;
      record.final_range = info.rel.range;
      break;
    }
  }
  return record;
}

TaskScenarioConfig task_scenario_config(TaskKind task) {
  TaskScenarioConfig config;
  switch (task) {
    case TaskKind::SteepTurn:
    case TaskKind::ShortDistance:
      config.bounds.range_max = 12000.0;
      break;
    case TaskKind::SmallAzimuth:
      config.weights.aircraft_speed = curriculum_speed_weights();
      config.weights.range = curriculum_range_weights();
      // the policy's operating regime per the stage split
      config.bounds.azimuth_min = -deg2rad(30.0);
      config.bounds.azimuth_max = deg2rad(30.0);
      break;
    case TaskKind::LargeAzimuth:
      config.weights.aircraft_speed = curriculum_speed_weights();
      config.weights.range = curriculum_range_weights();
      config.weights.azimuth = curriculum_large_azimuth_weights();
      break;
    case TaskKind::Baseline:
      break;
  }
  return config;
}

TaskEnv::TaskEnv(TaskKind task, std::uint64_t seed, double hz,
                 AircraftParams params)
    : task_(task),
      hz_(hz),
      params_(params),
      rng_(seed),
      rewards_(task),
      scenario_config_(task_scenario_config(task)),
      terminations_(training_terminations(task, hz)) {}

Observation TaskEnv::reset() {
  ScenarioSpec spec = sample_scenario(rng_, scenario_config_.bounds,
                                      scenario_config_.weights);
  sim_ = std::make_unique<WorldSim>(spec, params_, 1.0 / hz_);
  steps_ = 0;
  min_range_ =
      (sim_->world().missile.position - sim_->world().aircraft.position).norm();
  return sim_->observation();
}

EnvStep TaskEnv::step(const ControlAction& action) {
  StepInfo info = sim_->step(action);
  steps_ += 1;
  min_range_ = std::min(min_range_, info.cpa_range);

  StopCheck stop = evaluate_stop(info, terminations_, steps_);
  EnvStep out;
  out.observation = sim_->observation();
  out.done = stop.done;
  out.reward = rewards_.step_reward(sim_->world(), info);
  if (stop.done) {
    double final_range = stop.outcome == EpisodeOutcome::Hit
                             ? std::min(info.cpa_range, info.rel.range)
                             : info.rel.range;
    RewardBreakdown terminal = rewards_.terminal_reward(min_range_, final_range);
    out.reward.distance_terminal += terminal.distance_terminal;
    out.reward.total = out.reward.sum_terms();
  }
  return out;
}

}  // namespace evade
