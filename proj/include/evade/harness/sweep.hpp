#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "evade/harness/episode.hpp"

namespace evade {

using StrategyFactory = std::function<std::unique_ptr<Strategy>()>;

// Binned evaluation grid. Free dimensions use a single bin spanning the
// scenario bounds; the paper-scale grid bins everything.
struct SweepGrid {
  std::vector<Interval> aircraft_speed;
  std::vector<Interval> missile_speed;
  std::vector<Interval> range;
  std::vector<Interval> azimuth;  // rad
  int tests_per_cell = 1;

  std::size_t cell_count() const {
    return aircraft_speed.size() * missile_speed.size() * range.size() *
           azimuth.size();
  }
  std::size_t scenario_count() const {
    return cell_count() * static_cast<std::size_t>(tests_per_cell);
  }
};

// 12 azimuth bins x 5 range bins x 5 aircraft-speed bins, missile speed
// free, 2 tests per cell: 600 paired scenarios across the whole envelope.
SweepGrid desk_grid();
// The full study grid: 40 m/s x 100 m/s x 1000 m x 30 deg cells.
SweepGrid paper_grid(int tests_per_cell = 20);

struct SweepCellResult {
  Interval aircraft_speed, missile_speed, range, azimuth;
  int tests = 0;
  int successes = 0;
  double success_ratio = 0.0;
  double mean_max_missile_overload_g = 0.0;
  double max_max_missile_overload_g = 0.0;
};

struct StrategySweepResult {
  std::string strategy;
  std::vector<SweepCellResult> cells;
  int tests = 0;
  int successes = 0;
  double success_ratio = 0.0;
  int ground_impacts = 0;
  double mean_max_missile_overload_g = 0.0;
  std::uint64_t scenario_hash = 0;  // equal across strategies when paired
};

struct SweepOptions {
  double hz = 200.0;
  AircraftParams aircraft_params;
  bool paired = true;
  GuidanceLaw law = GuidanceLaw::PN;
  std::uint64_t master_seed = 0;
  int jobs = 1;
  ScenarioBounds bounds;  // free-dimension ranges
};

std::vector<StrategySweepResult> success_ratio_sweep(
    const SweepGrid& grid, const std::vector<StrategyFactory>& strategies,
    const SweepOptions& options);

void write_sweep_csv(const std::string& path,
                     const std::vector<StrategySweepResult>& results);

// Diagnostic study (a): run the given policy from a fixed start range and
// collect the aircraft roll when the range first drops below capture_range.
struct RollAtRangeResult {
  std::vector<double> rolls;        // rad, episodes that reached the capture range
  int episodes = 0;
  int reached = 0;
  double fraction_near_target = 0.0;  // |roll| within 85 +- 15 deg
};

RollAtRangeResult roll_at_range_analysis(const StrategyFactory& strategy,
                                         int episodes, std::uint64_t master_seed,
                                         double hz, double start_range = 12000.0,
                                         double capture_range = 8000.0,
                                         const AircraftParams& params = {},
                                         const ScenarioBounds& bounds = {});

// Diagnostic study (b): success ratio from a fixed start range for each
// initial roll angle.
struct RollConditionResult {
  std::vector<double> initial_rolls;  // rad
  std::vector<double> success_ratios;
  std::vector<int> tests;
};

RollConditionResult roll_condition_analysis(
    const StrategyFactory& strategy, const std::vector<double>& initial_rolls,
    int episodes_per_roll, std::uint64_t master_seed, double hz,
    double start_range = 8000.0, const AircraftParams& params = {},
    const ScenarioBounds& bounds = {});

}  // namespace evade
