#include "evade/learner/observation.hpp"

#include "evade/angles.hpp"

namespace evade {

Observation scale_observation(const RawObservation& raw,
                              const ObservationBounds& bounds) {
  Observation obs;
  auto& v = obs.values;
  v[0] = raw.aircraft_velocity.x / bounds.aircraft_velocity;
  v[1] = raw.aircraft_velocity.y / bounds.aircraft_velocity;
  v[2] = raw.aircraft_velocity.z / bounds.aircraft_velocity;
  v[3] = raw.pitch / (kPi / 2.0);
  v[4] = raw.roll / kPi;
  v[5] = (raw.heading - kPi) / kPi;
  v[6] = clamp(raw.relative_position.x, -bounds.relative_position,
               bounds.relative_position) / bounds.relative_position;
  v[7] = clamp(raw.relative_position.y, -bounds.relative_position,
               bounds.relative_position) / bounds.relative_position;
  v[8] = clamp(raw.relative_position.z, -bounds.relative_position,
               bounds.relative_position) / bounds.relative_position;
  v[9] = raw.relative_velocity.x / bounds.relative_velocity;
  v[10] = raw.relative_velocity.y / bounds.relative_velocity;
  v[11] = raw.relative_velocity.z / bounds.relative_velocity;
  return obs;
}

RawObservation unscale_observation(const Observation& obs,
                                   const ObservationBounds& bounds) {
  const auto& v = obs.values;
  RawObservation raw;
  raw.aircraft_velocity = {v[0] * bounds.aircraft_velocity,
                           v[1] * bounds.aircraft_velocity,
                           v[2] * bounds.aircraft_velocity};
  raw.pitch = v[3] * (kPi / 2.0);
  raw.roll = v[4] * kPi;
  raw.heading = v[5] * kPi + kPi;
  raw.relative_position = {v[6] * bounds.relative_position,
                           v[7] * bounds.relative_position,
                           v[8] * bounds.relative_position};
  raw.relative_velocity = {v[9] * bounds.relative_velocity,
                           v[10] * bounds.relative_velocity,
                           v[11] * bounds.relative_velocity};
  return raw;
}

Observation build_observation(const AircraftState& aircraft,
                              const MissileState& missile,
                              const ObservationBounds& bounds) {
  RawObservation raw;
  raw.aircraft_velocity = aircraft.velocity();
  raw.pitch = aircraft.pitch;
  raw.roll = aircraft.roll;
  raw.heading = aircraft.heading;
  raw.relative_position = missile.position - aircraft.position;
  raw.relative_velocity = missile.velocity() - aircraft.velocity();
  return scale_observation(raw, bounds);
}

}  // namespace evade
