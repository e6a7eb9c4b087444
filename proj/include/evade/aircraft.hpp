#pragma once

#include "evade/vec3.hpp"

namespace evade {

// Normalized surface/throttle commands.
struct ControlAction {
  double elevator = 0.0;  // [-1, 1]
  double aileron = 0.0;   // [-1, 1]
  double rudder = 0.0;    // [-1, 1]
  double throttle = 0.0;  // [0, 1]

  ControlAction clamped() const;
};

// Point-mass state with attitude kinematics. Pitch is the flight-path
// angle; the velocity vector is v * (cos(pitch) sin(heading),
// cos(pitch) cos(heading), sin(pitch)).
struct AircraftState {
  Vec3 position;         // m, ENU
  double speed = 300.0;  // m/s, clamped to [min_speed, max_speed]
  double roll = 0.0;     // rad, (-pi, pi]
  double pitch = 0.0;    // rad, [-pi/2, pi/2]
  double heading = 0.0;  // rad, [0, 2pi), 0 = north, clockwise positive
  bool ground_impact = false;

  Vec3 velocity() const;
};

struct AircraftParams {
  double max_roll_rate = 3.14;    // rad/s
  double max_pitch_rate = 0.52;   // rad/s, before load clipping
  double max_yaw_rate = 0.10;     // rad/s, rudder channel
  double max_load_factor = 9.0;   // g
  double thrust_max = 130000.0;   // N
  double mass = 12000.0;          // kg
  double drag_parasitic = 0.58;   // N per (m/s)^2
  double drag_induced = 8.0e7;    // N * (m/s)^2 per g^2
  double min_speed = 150.0;       // m/s
  double max_speed = 510.0;       // m/s
};

// Realized load factor in g for the given turn rates.
double load_factor(const AircraftState& state, double heading_rate,
                   double pitch_rate);

// One semi-implicit Euler step. Commanded rates are converted to a load
// vector and scaled down if the total would exceed max_load_factor, so the
// realized load never exceeds the cap. Throws on non-finite input; flags
// ground_impact when the new altitude goes below zero.
AircraftState step_aircraft(const AircraftState& state,
                            const ControlAction& action,
                            const AircraftParams& params, double dt);

}  // namespace evade
