#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evade/harness/world.hpp"
#include "evade/learner/train.hpp"
#include "evade/rewards.hpp"
#include "evade/strategy.hpp"

namespace evade {

enum class TaskKind {
  SteepTurn,
  ShortDistance,
  SmallAzimuth,
  LargeAzimuth,
  Baseline
};

const char* task_name(TaskKind task);
std::optional<TaskKind> task_from_name(const std::string& name);

// Episode-level stop conditions beyond hit/expiry/ground. Ranges fire on the
// post-step state; azimuth exit is the large-azimuth training termination.
struct TerminationRules {
  int max_steps = 5000;
  std::optional<double> stop_below_range;       // m
  std::optional<double> stop_below_azimuth;     // rad, |azimuth|
};

TerminationRules training_terminations(TaskKind task, double hz);
TerminationRules test_terminations(double hz);

enum class EpisodeOutcome { Hit, Survived, GroundImpact };

const char* outcome_name(EpisodeOutcome outcome);

struct StepRow {
  double t = 0.0;
  AircraftState aircraft;
  MissileState missile;
  std::optional<Stage> stage;
  ControlAction action;
  RewardBreakdown reward;
  double range = 0.0;
  double los_rate = 0.0;
  double aircraft_load_g = 0.0;
  double missile_overload_g = 0.0;
};

struct EpisodeRecord {
  ScenarioSpec spec;
  EpisodeOutcome outcome = EpisodeOutcome::Survived;
  std::string termination;  // hit | expired | ground | step_cap | range | azimuth
  int steps = 0;
  double min_range = 0.0;   // closest approach over the episode
  double final_range = 0.0;
  double max_missile_overload_g = 0.0;
  double accumulated_reward = 0.0;
  std::vector<StepRow> rows;  // filled only when trajectory recording is on
};

// Per-step reward dispatch for one task; owns the baseline terminal logic.
class RewardEvaluator {
 public:
  explicit RewardEvaluator(TaskKind task) : task_(task) {}

  RewardBreakdown step_reward(const WorldState& world, const StepInfo& info) const;
  // Baseline terminal term; zero breakdown for the other tasks.
  RewardBreakdown terminal_reward(double min_range, double final_range) const;

 private:
  TaskKind task_;
  SteepTurnRewardParams steep_;
  ShortDistanceRewardParams short_;
  SmallAzimuthRewardParams small_;
  LargeAzimuthRewardParams large_;
  BaselineRewardParams baseline_;
};

struct EpisodeOptions {
  double hz = 200.0;
  AircraftParams aircraft_params;
  TerminationRules terminations = {};
  std::optional<TaskKind> reward;  // per-term logging + accumulated reward
  bool record_trajectory = false;
};

EpisodeRecord run_episode(const ScenarioSpec& spec, Strategy& strategy,
                          const EpisodeOptions& options);

// Scenario sampling configuration for one training task: bounds overrides
// plus the curriculum interval weights.
struct TaskScenarioConfig {
  ScenarioBounds bounds;
  ScenarioWeights weights;
};

TaskScenarioConfig task_scenario_config(TaskKind task);

// TrainEnv over the co-simulation: samples a scenario per reset, evaluates
// the task reward, applies the task's training terminations.
class TaskEnv : public TrainEnv {
 public:
  TaskEnv(TaskKind task, std::uint64_t seed, double hz,
          AircraftParams params = {});

  Observation reset() override;
  EnvStep step(const ControlAction& action) override;

  const WorldState& world() const { return sim_->world(); }

 private:
  TaskKind task_;
  double hz_;
  AircraftParams params_;
  Rng rng_;
  RewardEvaluator rewards_;
  TaskScenarioConfig scenario_config_;
  TerminationRules terminations_;
  std::unique_ptr<WorldSim> sim_;
  int steps_ = 0;
  double min_range_ = 0.0;
};

}  // namespace evade
