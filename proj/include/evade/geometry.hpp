#pragma once

#include <utility>

#include "evade/vec3.hpp"

namespace evade {

// Aircraft-relative view of the missile. Azimuth is measured from the
// reverse of the aircraft heading, positive when the missile is on the
// aircraft's right; elevation is positive above the aircraft's horizontal
// plane.
struct RelativeGeometry {
  double range = 0.0;            // m
  double azimuth = 0.0;          // rad, (-pi, pi]
  double elevation = 0.0;        // rad, [-pi/2, pi/2]
  int side_sign = 0;             // {-1, 0, +1}, missile right of track = +1
  double los_rate = 0.0;         // rad/s, >= 0
  double signed_los_rate = 0.0;  // rad/s, + when LOS rotates CCW about +z
  double closing_velocity = 0.0; // m/s, positive when range shrinks
  bool degenerate_azimuth = false;
};

// First-order low-pass for the signed LOS rate. Seeded with the first raw
// sample so there is no startup transient toward zero.
class LosSmoother {
 public:
  double update(double raw) {
    double out = initialized_ ? 0.25 * raw + 0.75 * previous_ : raw;
    previous_ = out;
    initialized_ = true;
    return out;
  }
  void reset() { initialized_ = false; previous_ = 0.0; }
  bool initialized() const { return initialized_; }
  double previous() const { return previous_; }

 private:
  double previous_ = 0.0;
  bool initialized_ = false;
};

// Signed angle of delta_pos measured from the reversed aircraft heading,
// in (-pi, pi]; dead ahead maps to +pi. A purely vertical delta_pos has no
// defined azimuth: returns 0 and sets *degenerate when provided.
double azimuth_of(double aircraft_heading, const Vec3& delta_pos,
                  bool* degenerate = nullptr);

// arcsin(dz / |delta|), in [-pi/2, pi/2]. Throws on a zero vector.
double elevation_of(const Vec3& delta_pos);

// sign((delta_pos x aircraft_vel) . up): +1 missile right, -1 left,
// 0 only on exact collinearity (consumers break the tie toward +1).
int side_sign(const Vec3& delta_pos, const Vec3& aircraft_vel);

// Chord-rate LOS magnitude and its signed (about +z) counterpart from two
// consecutive unit LOS vectors. Throws if either input is not unit length.
std::pair<double, double> los_rates(const Vec3& prev_unit,
                                    const Vec3& curr_unit, double dt);

// -(dx . dv)/|dx|; positive while the range is decreasing. Throws on zero
// range.
double closing_velocity(const Vec3& delta_pos, const Vec3& delta_vel);

}  // namespace evade
