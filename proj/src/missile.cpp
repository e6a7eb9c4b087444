#include "evade/missile.hpp"

#include <cmath>
#include <stdexcept>

#include "evade/angles.hpp"
#include "evade/geometry.hpp"

namespace evade {

namespace {

constexpr double kMinCosPitch = 0.05;  // polar-singularity floor

struct LosAngles {
  double bearing;    // atan2(east, north) of missile -> target
  double elevation;  // atan2(up, horizontal range)
};

LosAngles los_angles(const Vec3& missile_pos, const Vec3& target_pos) {
  Vec3 d = target_pos - missile_pos;
  double horiz = std::hypot(d.x, d.y);
  return {std::atan2(d.x, d.y), std::atan2(d.z, horiz)};
}

}  // namespace

Vec3 MissileState::velocity() const {
  double cp = std::cos(pitch);
  return {speed * cp * std::sin(heading), speed * cp * std::cos(heading),
          speed * std::sin(pitch)};
}

InPlaneLosRates seeker_los_rates(SeekerState& seeker, const Vec3& missile_pos,
                                 const Vec3& target_pos, double dt) {
  LosAngles now = los_angles(missile_pos, target_pos);
  InPlaneLosRates rates;
  if (seeker.has_prev) {
    rates.horizontal = wrap_pi(now.bearing - seeker.prev_bearing) / dt;
    rates.vertical = (now.elevation - seeker.prev_elevation) / dt;
  }
  seeker.prev_bearing = now.bearing;
  seeker.prev_elevation = now.elevation;
  seeker.has_prev = true;
  return rates;
}

ChannelAccels pn_channel_accels(const InPlaneLosRates& rates, double nav_gain,
                                double closing_velocity) {
  return {nav_gain * closing_velocity * rates.horizontal,
          nav_gain * closing_velocity * rates.vertical};
}

ChannelAccels apn_channel_accels(const InPlaneLosRates& rates, double nav_gain,
                                 double accel_correction,
                                 double closing_velocity,
                                 const Vec3& missile_pos,
                                 const Vec3& target_pos,
                                 const Vec3& target_accel) {
  ChannelAccels pn = pn_channel_accels(rates, nav_gain, closing_velocity);
  LosAngles los = los_angles(missile_pos, target_pos);
  double sb = std::sin(los.bearing);
  double cb = std::cos(los.bearing);
  double se = std::sin(los.elevation);
  double ce = std::cos(los.elevation);
  // Perpendicular directions in the bearing sense (clockwise-positive) and
  // the elevation sense (up-positive) of the LOS.
  Vec3 perp_h{cb, -sb, 0.0};
  Vec3 perp_v{-se * sb, -se * cb, ce};
  pn.horizontal += accel_correction * target_accel.dot(perp_h);
  pn.vertical += accel_correction * target_accel.dot(perp_v);
  return pn;
}

ChannelAccels truncate_overload(const ChannelAccels& accels,
                                double max_overload_g) {
  double n = missile_overload(accels);
  if (n <= max_overload_g || n == 0.0) return accels;
  double scale = max_overload_g / n;
  return {accels.horizontal * scale, accels.vertical * scale};
}

double missile_overload(const ChannelAccels& accels) {
  return std::hypot(accels.horizontal, accels.vertical) / kG0;
}

ChannelAccels apply_response_lag(MissileState& state,
                                 const ChannelAccels& commanded, double dt,
                                 double response_time) {
  if (response_time <= 0.0) {
    state.achieved_horizontal = commanded.horizontal;
    state.achieved_vertical = commanded.vertical;
    return commanded;
  }
  double alpha = 1.0 - std::exp(-dt / response_time);
  state.achieved_horizontal +=
      alpha * (commanded.horizontal - state.achieved_horizontal);
  state.achieved_vertical +=
      alpha * (commanded.vertical - state.achieved_vertical);
  return {state.achieved_horizontal, state.achieved_vertical};
}

MissileState step_missile(const MissileState& state,
                          const ChannelAccels& accels, double dt) {
  if (!state.position.finite() || !std::isfinite(accels.horizontal) ||
      !std::isfinite(accels.vertical)) {
    throw std::invalid_argument("step_missile: non-finite input");
  }
  double cp = std::max(std::cos(state.pitch), kMinCosPitch);
  // zero speed only appears in test rigs (stationary threat)
  double heading_rate =
      state.speed > 0.0 ? accels.horizontal / (state.speed * cp) : 0.0;
  double pitch_rate = state.speed > 0.0 ? accels.vertical / state.speed : 0.0;

  MissileState next = state;
  next.heading = wrap_2pi(state.heading + heading_rate * dt);
  next.pitch = clamp(state.pitch + pitch_rate * dt, -kPi / 2.0, kPi / 2.0);
  next.position = state.position + next.velocity() * dt;
  next.elapsed = state.elapsed + dt;
  return next;
}

Outcome check_outcome(const Vec3& aircraft_pos, const MissileState& missile,
                      const GuidanceConfig& config) {
  if ((aircraft_pos - missile.position).norm() < config.lethal_radius) {
    return Outcome::Hit;
  }
  if (missile.elapsed >= config.effective_time) return Outcome::Expired;
  return Outcome::Ongoing;
}

ChannelAccels guidance_command(SeekerState& seeker, const MissileState& missile,
                               const Vec3& target_pos,
                               const Vec3& target_velocity,
                               const Vec3& target_accel,
                               const GuidanceConfig& config, double dt) {
  InPlaneLosRates rates =
      seeker_los_rates(seeker, missile.position, target_pos, dt);
  Vec3 delta_pos = target_pos - missile.position;
  Vec3 delta_vel = target_velocity - missile.velocity();
  double vc = closing_velocity(delta_pos, delta_vel);
  ChannelAccels cmd =
      config.law == GuidanceLaw::APN
          ? apn_channel_accels(rates, config.navigation_gain,
                               config.accel_correction, vc, missile.position,
                               target_pos, target_accel)
          : pn_channel_accels(rates, config.navigation_gain, vc);
  return truncate_overload(cmd, config.max_overload_g);
}

}  // namespace evade
