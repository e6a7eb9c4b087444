#pragma once

#include "evade/geometry.hpp"
#include "evade/harness/scenario.hpp"
#include "evade/learner/observation.hpp"

namespace evade {

// Everything one simulation tick produces that rewards, strategies, and
// bookkeeping care about.
struct StepInfo {
  RelativeGeometry rel;          // post-step geometry
  double smoothed_signed_los_rate = 0.0;
  double missile_overload_g = 0.0;  // realized command this step
  double aircraft_load_g = 0.0;
  double cpa_range = 0.0;        // closest approach inside the step interval
  Outcome outcome = Outcome::Ongoing;  // endpoint check
  bool hit = false;              // closest approach under the lethal radius
  bool ground_impact = false;    // below the altitude floor
};

// Aircraft + missile co-simulation at a fixed rate. Hit detection uses the
// within-step closest approach of the two (piecewise linear) trajectories,
// which keeps the lethal-radius test honest at reduced simulation rates.
class WorldSim {
 public:
  WorldSim(const ScenarioSpec& spec, const AircraftParams& params, double dt,
           double min_altitude = 1000.0);

  const WorldState& world() const { return world_; }
  const GuidanceConfig& guidance() const { return guidance_; }
  double dt() const { return dt_; }

  // Geometry of the current state; LOS rates are the ones computed on the
  // last step (zero before the first step).
  RelativeGeometry current_geometry() const;
  Observation observation() const;

  StepInfo step(const ControlAction& action);

 private:
  WorldState world_;
  GuidanceConfig guidance_;
  AircraftParams params_;
  double dt_;
  double min_altitude_;
  SeekerState seeker_;
  LosSmoother smoother_;
  Vec3 prev_los_unit_;
  double last_los_rate_ = 0.0;
  double last_signed_los_rate_ = 0.0;
  double last_smoothed_rate_ = 0.0;
};

}  // namespace evade
