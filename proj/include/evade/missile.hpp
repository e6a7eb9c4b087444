#pragma once

#include "evade/vec3.hpp"

namespace evade {

enum class GuidanceLaw { PN, APN };

struct GuidanceConfig {
  GuidanceLaw law = GuidanceLaw::PN;
  double navigation_gain = 4.0;      // N, typically in [3, 5]
  double accel_correction = 0.0;     // N', APN only, in [0.5 N, N]
  double max_overload_g = 45.0;      // in [40, 50]
  double lethal_radius = 10.0;       // m
  double effective_time = 25.0;      // s
  // First-order autopilot lag between the commanded and achieved lateral
  // acceleration. Zero gives the ideal (instant-response) airframe.
  double response_time = 0.4;        // s
};

// Constant-speed missile; speed never changes within an episode.
struct MissileState {
  Vec3 position;          // m, ENU
  double speed = 1000.0;  // m/s
  double heading = 0.0;   // rad, [0, 2pi)
  double pitch = 0.0;     // rad, [-pi/2, pi/2]
  double elapsed = 0.0;   // s since launch
  // achieved lateral acceleration, lagging the guidance command
  double achieved_horizontal = 0.0;  // m/s^2
  double achieved_vertical = 0.0;    // m/s^2

  Vec3 velocity() const;
};

// Seeker memory: previous in-plane LOS angles for the finite-difference
// rates, and the previous target velocity for the APN acceleration term.
struct SeekerState {
  bool has_prev = false;
  double prev_bearing = 0.0;    // rad, compass bearing missile -> target
  double prev_elevation = 0.0;  // rad
  bool has_prev_vel = false;
  Vec3 prev_target_velocity;
};

// Commanded horizontal/vertical accelerations in m/s^2.
struct ChannelAccels {
  double horizontal = 0.0;
  double vertical = 0.0;
};

struct InPlaneLosRates {
  double horizontal = 0.0;  // rad/s, signed, + = bearing increasing clockwise
  double vertical = 0.0;    // rad/s, signed, + = target rising
};

enum class Outcome { Ongoing, Hit, Expired };

// Signed per-channel LOS rates from consecutive bearing/elevation samples
// of the missile->target line. First call (no previous sample) yields zero
// rates. Updates the seeker memory.
InPlaneLosRates seeker_los_rates(SeekerState& seeker, const Vec3& missile_pos,
                                 const Vec3& target_pos, double dt);

// a = N * Vc * los_rate per channel.
ChannelAccels pn_channel_accels(const InPlaneLosRates& rates, double nav_gain,
                                double closing_velocity);

// PN terms plus N' times the target acceleration component perpendicular to
// the LOS, resolved per channel.
ChannelAccels apn_channel_accels(const InPlaneLosRates& rates, double nav_gain,
                                 double accel_correction,
                                 double closing_velocity,
                                 const Vec3& missile_pos,
                                 const Vec3& target_pos,
                                 const Vec3& target_accel);

// Scales both channels down proportionally when the total exceeds the
// overload cap; direction is preserved exactly.
ChannelAccels truncate_overload(const ChannelAccels& accels,
                                double max_overload_g);

// First-order response filter from the commanded to the achieved lateral
// acceleration; updates the achieved fields on the state and returns them.
// response_time == 0 passes the command through unchanged. The filter is a
// convex combination, so a capped command keeps the achieved overload under
// the same cap.
ChannelAccels apply_response_lag(MissileState& state,
                                 const ChannelAccels& commanded, double dt,
                                 double response_time);

// Realized load factor in g of a (possibly truncated) command.
double missile_overload(const ChannelAccels& accels);

// Advances heading/pitch from the channel accelerations and the position
// along the new velocity direction. Expects already-truncated commands.
MissileState step_missile(const MissileState& state,
                          const ChannelAccels& accels, double dt);

// Hit inside the lethal radius; Expired at or beyond the effective time.
// Hit wins when both hold on the same step.
Outcome check_outcome(const Vec3& aircraft_pos, const MissileState& missile,
                      const GuidanceConfig& config);

// Full guidance pass for one step: seeker rates, PN/APN command, overload
// truncation. target_accel is only consumed by the APN law.
ChannelAccels guidance_command(SeekerState& seeker, const MissileState& missile,
                               const Vec3& target_pos,
                               const Vec3& target_velocity,
                               const Vec3& target_accel,
                               const GuidanceConfig& config, double dt);

}  // namespace evade
