#pragma once

#include <memory>
#include <optional>
#include <string>

#include "evade/angles.hpp"
#include "evade/geometry.hpp"
#include "evade/learner/policy.hpp"

namespace evade {

enum class Stage { LargeAzimuth, SmallAzimuth, ShortDistance };

const char* stage_name(Stage stage);

struct SwitchThresholds {
  double enter_short_range = 8000.0;           // m
  double small_large_split = deg2rad(30.0);    // rad
  double large_exit_azimuth = deg2rad(15.0);   // rad
};

// Stage selection keyed on range and |azimuth|. ShortDistance is absorbing;
// the 15/30 degree pair gives the large<->small handoff hysteresis.
Stage select_stage(std::optional<Stage> prev, double range, double azimuth,
                   const SwitchThresholds& thresholds = {});

struct StrategyBundle {
  PolicyParameters large_azimuth;
  PolicyParameters small_azimuth;
  PolicyParameters short_distance;
  SwitchThresholds thresholds;
};

// Deterministic action of the given stage's policy (evaluation mode).
ControlAction act(const StrategyBundle& bundle, Stage stage,
                  const Observation& obs);

// Manifest file naming the three checkpoints plus the thresholds.
void save_bundle_manifest(const std::string& path,
                          const std::string& large_path,
                          const std::string& small_path,
                          const std::string& short_path,
                          const SwitchThresholds& thresholds = {});
StrategyBundle load_bundle(const std::string& manifest_path);

// Per-episode strategy interface used by the harness. begin_episode resets
// any per-episode state (the multi-stage strategy's stage token).
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual void begin_episode() {}
  virtual ControlAction decide(const Observation& obs,
                               const RelativeGeometry& rel) = 0;
  virtual std::string name() const = 0;
  // Stage recorded into trajectory rows; single-policy strategies report
  // nothing.
  virtual std::optional<Stage> current_stage() const { return std::nullopt; }
};

class MultiStageStrategy : public Strategy {
 public:
  explicit MultiStageStrategy(StrategyBundle bundle)
      : bundle_(std::move(bundle)) {}
  void begin_episode() override { stage_.reset(); }
  ControlAction decide(const Observation& obs,
                       const RelativeGeometry& rel) override;
  std::string name() const override { return "multi-stage"; }
  std::optional<Stage> current_stage() const override { return stage_; }

 private:
  StrategyBundle bundle_;
  std::optional<Stage> stage_;
};

// Single trained policy applied for the whole episode (steep-turn strategy,
// baseline RL strategy).
class SinglePolicyStrategy : public Strategy {
 public:
  SinglePolicyStrategy(PolicyParameters params, std::string name)
      : params_(std::move(params)), name_(std::move(name)) {}
  ControlAction decide(const Observation& obs,
                       const RelativeGeometry& rel) override;
  std::string name() const override { return name_; }

 private:
  PolicyParameters params_;
  std::string name_;
};

}  // namespace evade
