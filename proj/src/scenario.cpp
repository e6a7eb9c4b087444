#include "evade/harness/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace evade {

double IntervalWeights::sample(Rng& rng) const {
  if (intervals.empty() || intervals.size() != weights.size()) {
    throw std::invalid_argument("IntervalWeights: bad configuration");
  }
  std::size_t idx = rng.pick_weighted(weights);
  return rng.uniform(intervals[idx].lo, intervals[idx].hi);
}

IntervalWeights curriculum_speed_weights() {
  return {{{280.0, 320.0}, {320.0, 360.0}, {360.0, 400.0},
           {400.0, 440.0}, {440.0, 470.0}},
          {16.0, 8.0, 4.0, 2.0, 1.0}};
}

IntervalWeights curriculum_range_weights() {
  return {{{5000.0, 7000.0}, {7000.0, 9000.0}, {9000.0, 11000.0},
           {11000.0, 13000.0}, {13000.0, 15000.0}},
          {1.0, 2.0, 4.0, 8.0, 16.0}};
}

IntervalWeights curriculum_large_azimuth_weights() {
  auto bin = [](double lo_deg, double hi_deg) {
    return Interval{deg2rad(lo_deg), deg2rad(hi_deg)};
  };
  return {{bin(30.0, 60.0), bin(60.0, 90.0), bin(90.0, 120.0),
           bin(120.0, 150.0), bin(150.0, 180.0), bin(-180.0, -150.0),
           bin(-150.0, -120.0), bin(-120.0, -90.0), bin(-90.0, -60.0),
           bin(-60.0, -30.0)},
          {1.0, 2.0, 4.0, 8.0, 16.0, 16.0, 8.0, 4.0, 2.0, 1.0}};
}

ScenarioSpec sample_scenario(Rng& rng, const ScenarioBounds& bounds,
                             const ScenarioWeights& weights, GuidanceLaw law) {
  ScenarioSpec spec;
  spec.aircraft_altitude = rng.uniform(bounds.altitude_min, bounds.altitude_max);
  spec.aircraft_speed = weights.aircraft_speed
                            ? weights.aircraft_speed->sample(rng)
                            : rng.uniform(bounds.speed_min, bounds.speed_max);
  spec.aircraft_heading = rng.uniform(0.0, 2.0 * kPi);
  spec.missile_azimuth = weights.azimuth
                             ? wrap_pi(weights.azimuth->sample(rng))
                             : rng.uniform(bounds.azimuth_min, bounds.azimuth_max);
  spec.missile_elevation = rng.uniform(bounds.elevation_min, bounds.elevation_max);
  spec.missile_range = weights.range
                           ? weights.range->sample(rng)
                           : rng.uniform(bounds.range_min, bounds.range_max);
  spec.missile_speed =
      rng.uniform(bounds.missile_speed_min, bounds.missile_speed_max);
  spec.max_overload_g = rng.uniform(bounds.overload_min, bounds.overload_max);
  spec.navigation_gain = rng.uniform(bounds.nav_gain_min, bounds.nav_gain_max);
  spec.law = law;
  spec.accel_correction =
      law == GuidanceLaw::APN
          ? rng.uniform(0.5 * spec.navigation_gain, spec.navigation_gain)
          : 0.0;
  return spec;
}

WorldState make_world(const ScenarioSpec& spec) {
  WorldState world;
  world.aircraft.position = {0.0, 0.0, spec.aircraft_altitude};
  world.aircraft.speed = spec.aircraft_speed;
  world.aircraft.heading = wrap_2pi(spec.aircraft_heading);
  world.aircraft.roll = spec.aircraft_roll;
  world.aircraft.pitch = spec.aircraft_pitch;

  // Azimuth is measured from the reversed aircraft heading, positive to the
  // right, so the compass bearing of the missile is heading + pi - azimuth.
  double bearing = spec.aircraft_heading + kPi - spec.missile_azimuth;
  double ce = std::cos(spec.missile_elevation);
  Vec3 dir{ce * std::sin(bearing), ce * std::cos(bearing),
           std::sin(spec.missile_elevation)};
  world.missile.position = world.aircraft.position + dir * spec.missile_range;
  world.missile.speed = spec.missile_speed;

  // Aimed at the aircraft at launch.
  Vec3 d = world.aircraft.position - world.missile.position;
  world.missile.heading = wrap_2pi(std::atan2(d.x, d.y));
  world.missile.pitch = std::atan2(d.z, std::hypot(d.x, d.y));
  world.missile.elapsed = 0.0;
  return world;
}

GuidanceConfig guidance_from_spec(const ScenarioSpec& spec) {
  GuidanceConfig config;
  config.law = spec.law;
  config.navigation_gain = spec.navigation_gain;
  config.accel_correction = spec.accel_correction;
  config.max_overload_g = spec.max_overload_g;
  return config;
}

}  // namespace evade
