#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "evade/aircraft.hpp"
#include "evade/angles.hpp"
#include "evade/missile.hpp"
#include "evade/rng.hpp"

namespace evade {

// A fully instantiated initial condition. The aircraft starts at the ENU
// origin at its altitude; the missile is placed from the aircraft-relative
// azimuth/elevation/range and aimed at the aircraft.
struct ScenarioSpec {
  double aircraft_altitude = 5000.0;  // m
  double aircraft_speed = 300.0;      // m/s
  double aircraft_heading = 0.0;      // rad
  double aircraft_roll = 0.0;         // rad
  double aircraft_pitch = 0.0;        // rad
  double missile_azimuth = 0.0;       // rad, (-pi, pi]
  double missile_elevation = 0.0;     // rad
  double missile_range = 10000.0;     // m
  double missile_speed = 1000.0;      // m/s
  double max_overload_g = 45.0;
  double navigation_gain = 4.0;
  double accel_correction = 0.0;      // APN only
  GuidanceLaw law = GuidanceLaw::PN;
  std::uint64_t seed = 0;
};

struct ScenarioBounds {
  double altitude_min = 3000.0, altitude_max = 9000.0;
  double speed_min = 280.0, speed_max = 470.0;
  double azimuth_min = -kPi, azimuth_max = kPi;
  double elevation_min = deg2rad(-15.0), elevation_max = deg2rad(15.0);
  double range_min = 5000.0, range_max = 15000.0;
  double missile_speed_min = 800.0, missile_speed_max = 1400.0;
  double overload_min = 40.0, overload_max = 50.0;
  double nav_gain_min = 3.0, nav_gain_max = 5.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Weighted-interval draw: pick an interval proportionally to its weight,
// then uniformly inside it.
struct IntervalWeights {
  std::vector<Interval> intervals;
  std::vector<double> weights;

  double sample(Rng& rng) const;
};

// Curriculum weightings: aircraft speed leaning to the slow end (16..1),
// initial distance leaning to the far end (1..16), and for the large-azimuth
// task the ten 30-degree azimuth bins leaning to the rear.
IntervalWeights curriculum_speed_weights();
IntervalWeights curriculum_range_weights();
IntervalWeights curriculum_large_azimuth_weights();

struct ScenarioWeights {
  std::optional<IntervalWeights> aircraft_speed;
  std::optional<IntervalWeights> range;
  std::optional<IntervalWeights> azimuth;
};

ScenarioSpec sample_scenario(Rng& rng, const ScenarioBounds& bounds,
                             const ScenarioWeights& weights = {},
                             GuidanceLaw law = GuidanceLaw::PN);

struct WorldState {
  AircraftState aircraft;
  MissileState missile;
  double time = 0.0;
};

WorldState make_world(const ScenarioSpec& spec);
GuidanceConfig guidance_from_spec(const ScenarioSpec& spec);

}  // namespace evade
