#pragma once

#include <array>

#include "evade/aircraft.hpp"
#include "evade/missile.hpp"

namespace evade {

// 12-dimensional policy input, each element affinely scaled to [-1, 1]:
// aircraft velocity (+-470 m/s per axis), pitch (+-pi/2), roll (+-pi),
// heading ([0, 2pi)), relative missile position (+-15000 m, clamped before
// scaling) and relative velocity (+-1870 m/s).
struct Observation {
  std::array<double, 12> values{};
};

struct ObservationBounds {
  double aircraft_velocity = 470.0;
  double relative_position = 15000.0;
  double relative_velocity = 1870.0;
};

Observation build_observation(const AircraftState& aircraft,
                              const MissileState& missile,
                              const ObservationBounds& bounds = {});

// Inverse of the scaling for in-bounds raw values; used to check the
// bijection. Heading comes back in [0, 2pi).
struct RawObservation {
  Vec3 aircraft_velocity;
  double pitch = 0.0;
  double roll = 0.0;
  double heading = 0.0;
  Vec3 relative_position;
  Vec3 relative_velocity;
};

Observation scale_observation(const RawObservation& raw,
                              const ObservationBounds& bounds = {});
RawObservation unscale_observation(const Observation& obs,
                                   const ObservationBounds& bounds = {});

}  // namespace evade
