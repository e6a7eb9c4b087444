#include "evade/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "evade/angles.hpp"

namespace evade {

double azimuth_of(double aircraft_heading, const Vec3& delta_pos,
                  bool* degenerate) {
  if (degenerate != nullptr) *degenerate = false;
  double hx = delta_pos.x;
  double hy = delta_pos.y;
  if (hx == 0.0 && hy == 0.0) {
    if (degenerate != nullptr) *degenerate = true;
    return 0.0;
  }
  // Compass bearing of the missile seen from the aircraft (0 = north,
  // clockwise positive), then measured against the reversed heading so that
  // right-of-aircraft comes out positive and dead ahead lands on +pi.
  double bearing = std::atan2(hx, hy);
  return wrap_pi(aircraft_heading + kPi - bearing);
}

double elevation_of(const Vec3& delta_pos) {
  double n = delta_pos.norm();
  if (n == 0.0) throw std::invalid_argument("elevation_of: coincident positions");
  return std::asin(clamp(delta_pos.z / n, -1.0, 1.0));
}

int side_sign(const Vec3& delta_pos, const Vec3& aircraft_vel) {
  double s = delta_pos.cross(aircraft_vel).dot(kUp);
  if (s > 0.0) return 1;
  if (s < 0.0) return -1;
  return 0;
}

std::pair<double, double> los_rates(const Vec3& prev_unit,
                                    const Vec3& curr_unit, double dt) {
  constexpr double kUnitTol = 1e-9;
  if (std::abs(prev_unit.norm() - 1.0) > kUnitTol ||
      std::abs(curr_unit.norm() - 1.0) > kUnitTol) {
    throw std::invalid_argument("los_rates: inputs must be unit vectors");
  }
  if (dt <= 0.0) throw std::invalid_argument("los_rates: dt must be positive");
  double magnitude = (curr_unit - prev_unit).norm() / dt;
  double turn = prev_unit.cross(curr_unit).dot(kUp);
  double sign = turn > 0.0 ? 1.0 : (turn < 0.0 ? -1.0 : 0.0);
  return {magnitude, sign * magnitude};
}

double closing_velocity(const Vec3& delta_pos, const Vec3& delta_vel) {
  double range = delta_pos.norm();
  if (range == 0.0) throw std::invalid_argument("closing_velocity: zero range");
  return -delta_pos.dot(delta_vel) / range;
}

}  // namespace evade
