#include "evade/harness/world.hpp"

#include <cmath>

namespace evade {

namespace {

// Minimum distance between two points moving linearly over [0, dt].
double closest_approach(const Vec3& rel_pos, const Vec3& rel_vel, double dt) {
  double vv = rel_vel.squared_norm();
  double t_star = vv > 0.0 ? clamp(-rel_pos.dot(rel_vel) / vv, 0.0, dt) : 0.0;
  return (rel_pos + rel_vel * t_star).norm();
}

}  // namespace

WorldSim::WorldSim(const ScenarioSpec& spec, const AircraftParams& params,
                   double dt, double min_altitude)
    : world_(make_world(spec)),
      guidance_(guidance_from_spec(spec)),
      params_(params),
      dt_(dt),
      min_altitude_(min_altitude) {
  prev_los_unit_ =
      (world_.missile.position - world_.aircraft.position).normalized();
}

RelativeGeometry WorldSim::current_geometry() const {
  RelativeGeometry rel;
  Vec3 delta = world_.missile.position - world_.aircraft.position;
  rel.range = delta.norm();
  rel.azimuth =
      azimuth_of(world_.aircraft.heading, delta, &rel.degenerate_azimuth);
  rel.elevation = rel.range > 0.0 ? elevation_of(delta) : 0.0;
  rel.side_sign = side_sign(delta, world_.aircraft.velocity());
  rel.los_rate = last_los_rate_;
  rel.signed_los_rate = last_signed_los_rate_;
  rel.closing_velocity =
      rel.range > 0.0
          ? closing_velocity(delta, world_.missile.velocity() -
                                        world_.aircraft.velocity())
          : 0.0;
  return rel;
}

Observation WorldSim::observation() const {
  return build_observation(world_.aircraft, world_.missile);
}

StepInfo WorldSim::step(const ControlAction& action) {
  const AircraftState& aircraft = world_.aircraft;
  const MissileState& missile = world_.missile;
  Vec3 aircraft_vel_before = aircraft.velocity();

  AircraftState next_aircraft = step_aircraft(aircraft, action, params_, dt_);

  // Perfect-information seeker: the target acceleration for APN is the
  // one-step finite difference of the true aircraft velocity.
  Vec3 target_accel = (next_aircraft.velocity() - aircraft_vel_before) / dt_;
  ChannelAccels cmd =
      guidance_command(seeker_, missile, next_aircraft.position,
                       next_aircraft.velocity(), target_accel, guidance_, dt_);
  MissileState lagged = missile;
  ChannelAccels achieved =
      apply_response_lag(lagged, cmd, dt_, guidance_.response_time);
  MissileState next_missile = step_missile(lagged, achieved, dt_);

  StepInfo info;
  info.missile_overload_g = missile_overload(achieved);

  double heading_rate = wrap_pi(next_aircraft.heading - aircraft.heading) / dt_;
  double pitch_rate = (next_aircraft.pitch - aircraft.pitch) / dt_;
  info.aircraft_load_g = load_factor(aircraft, heading_rate, pitch_rate);

  // Closest approach over the step using the effective step velocities.
  Vec3 rel_pos = missile.position - aircraft.position;
  Vec3 rel_vel = ((next_missile.position - missile.position) -
                  (next_aircraft.position - aircraft.position)) / dt_;
  info.cpa_range = closest_approach(rel_pos, rel_vel, dt_);
  info.hit = info.cpa_range < guidance_.lethal_radius;

  world_.aircraft = next_aircraft;
  world_.missile = next_missile;
  world_.time += dt_;

  Vec3 delta = next_missile.position - next_aircraft.position;
  if (delta.norm() > 0.0) {
    Vec3 los_unit = delta.normalized();
    auto [rate, signed_rate] = los_rates(prev_los_unit_, los_unit, dt_);
    prev_los_unit_ = los_unit;
    last_los_rate_ = rate;
    last_signed_los_rate_ = signed_rate;
    last_smoothed_rate_ = smoother_.update(signed_rate);
  }

  info.rel = current_geometry();
  info.smoothed_signed_los_rate = last_smoothed_rate_;
  info.outcome = check_outcome(next_aircraft.position, next_missile, guidance_);
  if (info.outcome == Outcome::Hit) info.hit = true;
  info.ground_impact =
      next_aircraft.ground_impact || next_aircraft.position.z < min_altitude_;
  return info;
}

}  // namespace evade
