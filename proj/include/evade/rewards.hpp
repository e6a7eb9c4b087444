#pragma once

#include <array>
#include <string_view>

#include "evade/angles.hpp"

namespace evade {

// Per-term reward values for one step. Absent terms stay zero; total is the
// exact sum of the terms.
struct RewardBreakdown {
  double roll = 0.0;
  double pitch = 0.0;
  double azimuth = 0.0;
  double velocity = 0.0;
  double los = 0.0;
  double constraint_roll = 0.0;
  double constraint_pitch = 0.0;
  double constraint_azimuth = 0.0;
  double constraint_velocity = 0.0;
  double distance_terminal = 0.0;
  double overload = 0.0;
  double total = 0.0;

  double sum_terms() const {
    return roll + pitch + azimuth + velocity + los + constraint_roll +
           constraint_pitch + constraint_azimuth + constraint_velocity +
           distance_terminal + overload;
  }

  static constexpr std::array<std::string_view, 11> term_names() {
    return {"roll",
            "pitch",
            "azimuth",
            "velocity",
            "los",
            "constraint_roll",
            "constraint_pitch",
            "constraint_azimuth",
            "constraint_velocity",
            "distance_terminal",
            "overload"};
  }
  std::array<double, 11> terms() const {
    return {roll,  pitch,           azimuth,          velocity,
            los,   constraint_roll, constraint_pitch, constraint_azimuth,
            constraint_velocity,    distance_terminal, overload};
  }
};

// Angle arguments of the exponential terms are in radians; degree-valued
// targets and thresholds are converted once at construction.
struct SteepTurnRewardParams {
  double roll_weight = 0.5;
  double pitch_weight = 0.5;
  double target_roll = deg2rad(85.0);
  double target_pitch = 0.0;
  double roll_tau = 0.2;
  double pitch_tau = 0.2;
};

struct ShortDistanceRewardParams {
  SteepTurnRewardParams turn;
  double los_weight = 0.6;
  double los_tau = 0.1;  // rad/s
};

struct SmallAzimuthRewardParams {
  double roll_weight = 0.5;
  double pitch_weight = 0.5;
  double azimuth_weight = 1.0;
  double velocity_weight = 0.2;
  double roll_tau = 0.2;
  double pitch_tau = 0.2;
  double azimuth_tau = 0.2;
  double velocity_tau = 80.0;      // m/s
  double reference_speed = 350.0;  // m/s
  double penalty = -20.0;
  double max_roll = deg2rad(135.0);
  double max_pitch = deg2rad(22.5);
  double max_azimuth = deg2rad(30.0);
  double min_speed = 240.0;
  double max_speed = 510.0;
};

struct LargeAzimuthRewardParams {
  double roll_weight = 0.5;
  double target_roll = deg2rad(85.0);
  double roll_tau = 0.2;
  double critical_range = 8500.0;           // m, far/close roll branch
  double close_roll_limit = deg2rad(30.0);  // |roll| bound inside the branch
  double close_roll_reward = 0.5;
  double pitch_weight = 0.5;
  double pitch_tau = 0.2;
  double velocity_weight = 0.3;
  double velocity_tau = 60.0;
  double reference_speed = 350.0;
  double penalty = -20.0;
  double max_roll = deg2rad(135.0);
  double max_pitch = deg2rad(22.5);
  double min_speed = 240.0;
  double max_speed = 510.0;
};

struct BaselineRewardParams {
  double los_coeff = 2.4;
  double los_floor = 1e-6;  // |los rate| floor before the log
  double overload_coeff = -0.01;
  double pitch_weight = 0.5;
  double pitch_tau = 0.2;
  double roll_penalty = -20.0;
  double max_roll = deg2rad(135.0);
  double lethal_radius = 10.0;
  double miss_coeff = -200.0;
  double survive_slope = 400.0;
  double survive_offset = 4000.0;
};

// side: +1 missile right of track, -1 left; 0 is treated as +1.
RewardBreakdown reward_steep_turn(double roll, double pitch, int side,
                                  const SteepTurnRewardParams& p = {});

RewardBreakdown reward_short_distance(double roll, double pitch, int side,
                                      double smoothed_signed_los_rate,
                                      const ShortDistanceRewardParams& p = {});

RewardBreakdown reward_small_azimuth(double roll, double pitch, double azimuth,
                                     double speed,
                                     const SmallAzimuthRewardParams& p = {});

RewardBreakdown reward_large_azimuth(double roll, double pitch, int side,
                                     double speed, double range,
                                     const LargeAzimuthRewardParams& p = {});

// Per-step part of the baseline reward; the terminal distance term is added
// separately at episode end.
RewardBreakdown reward_baseline_step(double los_rate_magnitude,
                                     double missile_overload_g, double pitch,
                                     double roll,
                                     const BaselineRewardParams& p = {});

// Terminal distance reward from the episode minimum range, branched on the
// final range (hit vs survived).
RewardBreakdown reward_baseline_terminal(double min_range, double final_range,
                                         const BaselineRewardParams& p = {});

}  // namespace evade
