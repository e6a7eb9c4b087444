#include "evade/harness/sweep.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <array>
#include <thread>

#include "evade/harness/csvio.hpp"

namespace evade {

namespace {

std::vector<Interval> partition(double lo, double hi, int bins) {
  std::vector<Interval> out;
  double width = (hi - lo) / bins;
  for (int i = 0; i < bins; ++i) {
    out.push_back({lo + i * width, lo + (i + 1) * width});
  }
  return out;
}

std::uint64_t hash_spec(std::uint64_t h, const ScenarioSpec& spec) {
  std::ostringstream os;
  os << format_number(spec.aircraft_altitude) << '|'
     << format_number(spec.aircraft_speed) << '|'
     << format_number(spec.aircraft_heading) << '|'
     << format_number(spec.missile_azimuth) << '|'
     << format_number(spec.missile_elevation) << '|'
     << format_number(spec.missile_range) << '|'
     << format_number(spec.missile_speed) << '|'
     << format_number(spec.max_overload_g) << '|'
     << format_number(spec.navigation_gain) << '|'
     << format_number(spec.accel_correction);
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

SweepGrid desk_grid() {
  SweepGrid grid;
  grid.aircraft_speed = {{280.0, 320.0}, {320.0, 360.0}, {360.0, 400.0},
                         {400.0, 440.0}, {440.0, 470.0}};
  grid.missile_speed = {{800.0, 1400.0}};
  grid.range = partition(5000.0, 15000.0, 5);
  grid.azimuth = partition(-kPi, kPi, 12);
  grid.tests_per_cell = 2;
  return grid;
}

SweepGrid paper_grid(int tests_per_cell) {
  SweepGrid grid;
  grid.aircraft_speed = {{280.0, 320.0}, {320.0, 360.0}, {360.0, 400.0},
                         {400.0, 440.0}, {440.0, 470.0}};
  grid.missile_speed = partition(800.0, 1400.0, 6);
  grid.range = partition(5000.0, 15000.0, 10);
  grid.azimuth = partition(-kPi, kPi, 12);
  grid.tests_per_cell = tests_per_cell;
  return grid;
}

std::vector<StrategySweepResult> success_ratio_sweep(
    const SweepGrid& grid, const std::vector<StrategyFactory>& strategies,
    const SweepOptions& options) {
  const std::size_t cells = grid.cell_count();
  const std::size_t reps = static_cast<std::size_t>(grid.tests_per_cell);
  const std::size_t total = cells * reps;
  const std::size_t n_strategies = strategies.size();

  // Scenario specs are derived up front so pairing and hashing are
  // independent of execution order.
  std::vector<ScenarioSpec> specs(total * n_strategies);
  auto cell_bins = [&](std::size_t cell) {
    std::size_t a = cell % grid.aircraft_speed.size();
    cell /= grid.aircraft_speed.size();
    std::size_t m = cell % grid.missile_speed.size();
    cell /= grid.missile_speed.size();
    std::size_t r = cell % grid.range.size();
    cell /= grid.range.size();
    std::size_t z = cell;
    return std::array<std::size_t, 4>{a, m, r, z};
  };
  for (std::size_t cell = 0; cell < cells; ++cell) {
    auto [a, m, r, z] = cell_bins(cell);
    for (std::size_t rep = 0; rep < reps; ++rep) {
      for (std::size_t s = 0; s < n_strategies; ++s) {
        // paired: every strategy sees the same seed, hence the same spec
        std::uint64_t seed =
            options.paired
                ? derive_seed(options.master_seed, cell, rep)
                : derive_seed(options.master_seed, cell * 1000003 + s, rep);
        Rng rng(seed);
        ScenarioBounds bounds = options.bounds;
        const Interval& speed_bin = grid.aircraft_speed[a];
        const Interval& vm_bin = grid.missile_speed[m];
        const Interval& range_bin = grid.range[r];
        const Interval& az_bin = grid.azimuth[z];
        bounds.speed_min = speed_bin.lo;
        bounds.speed_max = speed_bin.hi;
        bounds.missile_speed_min = vm_bin.lo;
        bounds.missile_speed_max = vm_bin.hi;
        bounds.range_min = range_bin.lo;
        bounds.range_max = range_bin.hi;
        bounds.azimuth_min = az_bin.lo;
        bounds.azimuth_max = az_bin.hi;
        ScenarioSpec spec = sample_scenario(rng, bounds, {}, options.law);
        spec.seed = seed;
        specs[(cell * reps + rep) * n_strategies + s] = spec;
      }
    }
  }

  // outcome per (scenario, strategy)
  std::vector<EpisodeOutcome> outcomes(total * n_strategies);
  std::vector<double> overloads(total * n_strategies);

  auto worker = [&](std::size_t worker_id, std::size_t workers) {
    std::vector<std::unique_ptr<Strategy>> local;
    local.reserve(n_strategies);
    for (const auto& factory : strategies) local.push_back(factory());
    EpisodeOptions episode_options;
    episode_options.hz = options.hz;
    episode_options.aircraft_params = options.aircraft_params;
    episode_options.terminations = test_terminations(options.hz);
    for (std::size_t i = worker_id; i < total; i += workers) {
      for (std::size_t s = 0; s < n_strategies; ++s) {
        const ScenarioSpec& spec = specs[i * n_strategies + s];
        EpisodeRecord record = run_episode(spec, *local[s], episode_options);
        outcomes[i * n_strategies + s] = record.outcome;
        overloads[i * n_strategies + s] = record.max_missile_overload_g;
      }
    }
  };

  int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) {
      threads.emplace_back(worker, static_cast<std::size_t>(j),
                           static_cast<std::size_t>(jobs));
    }
    for (auto& t : threads) t.join();
  }

  // aggregate
  std::vector<StrategySweepResult> results(n_strategies);
  for (std::size_t s = 0; s < n_strategies; ++s) {
    StrategySweepResult& res = results[s];
    res.strategy = strategies[s]()->name();
    res.cells.resize(cells);
    std::uint64_t h = 1469598103934665603ULL;
    double overload_sum = 0.0;
    for (std::size_t cell = 0; cell < cells; ++cell) {
      auto [a, m, r, z] = cell_bins(cell);
      SweepCellResult& cr = res.cells[cell];
      cr.aircraft_speed = grid.aircraft_speed[a];
      cr.missile_speed = grid.missile_speed[m];
      cr.range = grid.range[r];
      cr.azimuth = grid.azimuth[z];
      double cell_overload_sum = 0.0;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        std::size_t i = cell * reps + rep;
        const EpisodeOutcome outcome = outcomes[i * n_strategies + s];
        const double overload = overloads[i * n_strategies + s];
        h = hash_spec(h, specs[i * n_strategies + s]);
        cr.tests += 1;
        if (outcome == EpisodeOutcome::Survived) cr.successes += 1;
        if (outcome == EpisodeOutcome::GroundImpact) res.ground_impacts += 1;
        cell_overload_sum += overload;
        cr.max_max_missile_overload_g =
            std::max(cr.max_max_missile_overload_g, overload);
      }
      cr.success_ratio = static_cast<double>(cr.successes) / cr.tests;
      cr.mean_max_missile_overload_g = cell_overload_sum / cr.tests;
      res.tests += cr.tests;
      res.successes += cr.successes;
      overload_sum += cell_overload_sum;
    }
    res.success_ratio = static_cast<double>(res.successes) / res.tests;
    res.mean_max_missile_overload_g = overload_sum / res.tests;
    res.scenario_hash = h;
  }
  return results;
}

void write_sweep_csv(const std::string& path,
                     const std::vector<StrategySweepResult>& results) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << "strategy,aircraft_speed_lo,aircraft_speed_hi,missile_speed_lo,"
         "missile_speed_hi,range_lo,range_hi,azimuth_lo_deg,azimuth_hi_deg,"
         "tests,successes,success_ratio,mean_max_missile_overload_g,"
         "max_max_missile_overload_g\n";
  for (const auto& res : results) {
    for (const auto& cell : res.cells) {
      out << res.strategy << ',' << format_number(cell.aircraft_speed.lo) << ','
          << format_number(cell.aircraft_speed.hi) << ','
          << format_number(cell.missile_speed.lo) << ','
          << format_number(cell.missile_speed.hi) << ','
          << format_number(cell.range.lo) << ',' << format_number(cell.range.hi)
          << ',' << format_number(rad2deg(cell.azimuth.lo)) << ','
          << format_number(rad2deg(cell.azimuth.hi)) << ',' << cell.tests << ','
          << cell.successes << ',' << format_number(cell.success_ratio) << ','
          << format_number(cell.mean_max_missile_overload_g) << ','
          << format_number(cell.max_max_missile_overload_g) << '\n';
    }
  }
}

RollAtRangeResult roll_at_range_analysis(const StrategyFactory& strategy,
                                         int episodes, std::uint64_t master_seed,
                                         double hz, double start_range,
                                         double capture_range,
                                         const AircraftParams& params,
                                         const ScenarioBounds& base_bounds) {
  RollAtRangeResult result;
  result.episodes = episodes;
  auto policy = strategy();
  for (int i = 0; i < episodes; ++i) {
    Rng rng(derive_seed(master_seed, 0x726f6c6c, i));
    ScenarioBounds bounds = base_bounds;
    bounds.range_min = bounds.range_max = start_range;
    ScenarioSpec spec = sample_scenario(rng, bounds);
    WorldSim sim(spec, params, 1.0 / hz);
    policy->begin_episode();
    int max_steps = static_cast<int>(std::lround(25.0 * hz));
    for (int step = 0; step < max_steps; ++step) {
      Observation obs = sim.observation();
      RelativeGeometry rel = sim.current_geometry();
      ControlAction action = policy->decide(obs, rel);
      StepInfo info = sim.step(action);
      if (info.rel.range <= capture_range) {
        double roll = sim.world().aircraft.roll;
        result.rolls.push_back(roll);
        result.reached += 1;
        double mag_deg = rad2deg(std::abs(roll));
        if (mag_deg >= 70.0 && mag_deg <= 100.0) {
          result.fraction_near_target += 1.0;
        }
        break;
      }
      if (info.hit || info.ground_impact || info.outcome != Outcome::Ongoing) {
        break;
      }
    }
  }
  if (result.reached > 0) result.fraction_near_target /= result.reached;
  return result;
}

RollConditionResult roll_condition_analysis(
    const StrategyFactory& strategy, const std::vector<double>& initial_rolls,
    int episodes_per_roll, std::uint64_t master_seed, double hz,
    double start_range, const AircraftParams& params,
    const ScenarioBounds& base_bounds) {
  RollConditionResult result;
  auto policy = strategy();
  EpisodeOptions options;
  options.hz = hz;
  options.aircraft_params = params;
  options.terminations = test_terminations(hz);
  for (double roll : initial_rolls) {
    int successes = 0;
    for (int i = 0; i < episodes_per_roll; ++i) {
      // identical scenarios across the roll conditions
      Rng rng(derive_seed(master_seed, 0x726f6c32, i));
      ScenarioBounds bounds = base_bounds;
      bounds.range_min = bounds.range_max = start_range;
      ScenarioSpec spec = sample_scenario(rng, bounds);
      spec.aircraft_roll = roll;
      EpisodeRecord record = run_episode(spec, *policy, options);
      if (record.outcome == EpisodeOutcome::Survived) successes += 1;
    }
    result.initial_rolls.push_back(roll);
    result.tests.push_back(episodes_per_roll);
    result.success_ratios.push_back(static_cast<double>(successes) /
                                    episodes_per_roll);
  }
  return result;
}

}  // namespace evade
