#include "evade/aircraft.hpp"

#include <cmath>
#include <stdexcept>

#include "evade/angles.hpp"

namespace evade {

namespace {

// Keeps the coordinated-turn term finite through the vertical-bank
// singularity; 60 corresponds to a bank of about 89 degrees.
constexpr double kMaxBankTan = 60.0;
constexpr double kMinCosPitch = 1e-6;

}  // namespace

ControlAction ControlAction::clamped() const {
  return {clamp(elevator, -1.0, 1.0), clamp(aileron, -1.0, 1.0),
          clamp(rudder, -1.0, 1.0), clamp(throttle, 0.0, 1.0)};
}

Vec3 AircraftState::velocity() const {
  double ch = std::cos(pitch);
  return {speed * ch * std::sin(heading), speed * ch * std::cos(heading),
          speed * std::sin(pitch)};
}

double load_factor(const AircraftState& state, double heading_rate,
                   double pitch_rate) {
  double cp = std::cos(state.pitch);
  double lateral = state.speed * heading_rate * cp / kG0;
  double normal = state.speed * pitch_rate / kG0 + cp;
  return std::sqrt(lateral * lateral + normal * normal);
}

AircraftState step_aircraft(const AircraftState& state,
                            const ControlAction& action,
                            const AircraftParams& params, double dt) {
  if (!state.position.finite() || !std::isfinite(state.speed) ||
      !std::isfinite(state.roll) || !std::isfinite(state.pitch) ||
      !std::isfinite(state.heading)) {
    throw std::invalid_argument("step_aircraft: non-finite state");
  }
  ControlAction a = action.clamped();
  if (!std::isfinite(a.elevator) || !std::isfinite(a.aileron) ||
      !std::isfinite(a.rudder) || !std::isfinite(a.throttle)) {
    throw std::invalid_argument("step_aircraft: non-finite action");
  }

  double cp = std::cos(state.pitch);

  // Commanded rates: roll is direct, heading follows the coordinated-turn
  // relation plus the rudder channel, pitch follows the elevator.
  double roll_rate = params.max_roll_rate * a.aileron;
  double bank_tan = clamp(std::tan(state.roll), -kMaxBankTan, kMaxBankTan);
  double heading_rate =
      kG0 * bank_tan * cp / state.speed + params.max_yaw_rate * a.rudder;
  double pitch_rate = params.max_pitch_rate * a.elevator;

  // Clip the commanded load vector so the realized total stays at or below
  // the structural cap; direction is preserved.
  double lateral = state.speed * heading_rate * cp / kG0;
  double normal = state.speed * pitch_rate / kG0 + cp;
  double n = std::sqrt(lateral * lateral + normal * normal);
  if (n > params.max_load_factor) {
    double scale = params.max_load_factor / n;
    lateral *= scale;
    normal *= scale;
    n = params.max_load_factor;
    heading_rate = (cp > kMinCosPitch)
                       ? lateral * kG0 / (state.speed * cp)
                       : 0.0;
    pitch_rate = (normal - cp) * kG0 / state.speed;
  }

  double thrust = params.thrust_max * a.throttle;
  double drag = params.drag_parasitic * state.speed * state.speed +
                params.drag_induced * n * n / (state.speed * state.speed);
  double accel = (thrust - drag) / params.mass - kG0 * std::sin(state.pitch);

  AircraftState next = state;
  next.roll = wrap_pi(state.roll + roll_rate * dt);
  next.pitch = clamp(state.pitch + pitch_rate * dt, -kPi / 2.0, kPi / 2.0);
  next.heading = wrap_2pi(state.heading + heading_rate * dt);
  next.speed = clamp(state.speed + accel * dt, params.min_speed,
                     params.max_speed);
  next.position = state.position + next.velocity() * dt;
  if (next.position.z < 0.0) {
    next.position.z = 0.0;
    next.ground_impact = true;
  }
  return next;
}

}  // namespace evade
