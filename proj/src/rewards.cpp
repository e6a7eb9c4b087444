#include "evade/rewards.hpp"

#include <cmath>

namespace evade {

namespace {

double tie_break(int side) { return side < 0 ? -1.0 : 1.0; }

}  // namespace

RewardBreakdown reward_steep_turn(double roll, double pitch, int side,
                                  const SteepTurnRewardParams& p) {
  RewardBreakdown r;
  double s = tie_break(side);
  r.roll = p.roll_weight * std::exp(-std::abs(roll - s * p.target_roll) / p.roll_tau);
  r.pitch = p.pitch_weight * std::exp(-std::abs(pitch - p.target_pitch) / p.pitch_tau);
  r.total = r.sum_terms();
  return r;
}

RewardBreakdown reward_short_distance(double roll, double pitch, int side,
                                      double smoothed_signed_los_rate,
                                      const ShortDistanceRewardParams& p) {
  RewardBreakdown r = reward_steep_turn(roll, pitch, side, p.turn);
  double s = tie_break(side);
  r.los = p.los_weight * std::tanh(s * smoothed_signed_los_rate / p.los_tau);
  r.total = r.sum_terms();
  return r;
}

RewardBreakdown reward_small_azimuth(double roll, double pitch, double azimuth,
                                     double speed,
                                     const SmallAzimuthRewardParams& p) {
  RewardBreakdown r;
  r.roll = p.roll_weight * std::exp(-std::abs(roll) / p.roll_tau);
  r.pitch = p.pitch_weight * std::exp(-std::abs(pitch) / p.pitch_tau);
  r.azimuth = p.azimuth_weight * std::exp(-std::abs(azimuth) / p.azimuth_tau);
  r.velocity =
      p.velocity_weight * std::tanh((speed - p.reference_speed) / p.velocity_tau);
  if (std::abs(roll) > p.max_roll) r.constraint_roll = p.penalty;
  if (std::abs(pitch) > p.max_pitch) r.constraint_pitch = p.penalty;
  if (std::abs(azimuth) > p.max_azimuth) r.constraint_azimuth = p.penalty;
  if (speed < p.min_speed || speed > p.max_speed) r.constraint_velocity = p.penalty;
  r.total = r.sum_terms();
  return r;
}

RewardBreakdown reward_large_azimuth(double roll, double pitch, int side,
                                     double speed, double range,
                                     const LargeAzimuthRewardParams& p) {
  RewardBreakdown r;
  if (range > p.critical_range) {
    double s = tie_break(side);
    r.roll =
        p.roll_weight * std::exp(-std::abs(roll - s * p.target_roll) / p.roll_tau);
  } else {
    r.roll = std::abs(roll) > p.close_roll_limit ? p.penalty : p.close_roll_reward;
  }
  r.pitch = p.pitch_weight * std::exp(-std::abs(pitch) / p.pitch_tau);
  r.velocity =
      p.velocity_weight * std::tanh((speed - p.reference_speed) / p.velocity_tau);
  if (std::abs(roll) > p.max_roll) r.constraint_roll = p.penalty;
  if (std::abs(pitch) > p.max_pitch) r.constraint_pitch = p.penalty;
  if (speed < p.min_speed || speed > p.max_speed) r.constraint_velocity = p.penalty;
  r.total = r.sum_terms();
  return r;
}

RewardBreakdown reward_baseline_step(double los_rate_magnitude,
                                     double missile_overload_g, double pitch,
                                     double roll, const BaselineRewardParams& p) {
  RewardBreakdown r;
  r.los = p.los_coeff * std::log(std::max(los_rate_magnitude, p.los_floor));
  r.overload = p.overload_coeff * missile_overload_g * missile_overload_g;
  r.pitch = p.pitch_weight * std::exp(-std::abs(pitch) / p.pitch_tau);
  if (std::abs(roll) > p.max_roll) r.constraint_roll = p.roll_penalty;
  r.total = r.sum_terms();
  return r;
}

RewardBreakdown reward_baseline_terminal(double min_range, double final_range,
                                         const BaselineRewardParams& p) {
  RewardBreakdown r;
  double d = min_range - p.lethal_radius;
  r.distance_terminal = final_range < p.lethal_radius
                            ? p.miss_coeff * d * d
                            : p.survive_slope * d + p.survive_offset;
  r.total = r.sum_terms();
  return r;
}

}  // namespace evade
