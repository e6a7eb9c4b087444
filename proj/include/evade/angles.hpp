#pragma once

#include <cmath>
#include <numbers>

namespace evade {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kG0 = 9.81;  // m/s^2

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Wrap into (-pi, pi]; -pi maps to +pi.
inline double wrap_pi(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w <= 0.0) w += 2.0 * kPi;
  return w - kPi;
}

// Wrap into [0, 2*pi).
inline double wrap_2pi(double a) {
  double w = std::fmod(a, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w;
}

template <typename T>
constexpr T clamp(T v, T lo, T hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

}  // namespace evade
