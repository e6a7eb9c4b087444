#include <cmath>

#include "doctest.h"
#include "evade/angles.hpp"
#include "evade/missile.hpp"
#include "evade/rng.hpp"

using namespace evade;

namespace {

// Flies the missile against a constant-velocity point target and returns the
// minimum range seen at step resolution.
double run_against_straight_target(GuidanceConfig config, Vec3 target_pos,
                                   Vec3 target_vel, MissileState missile,
                                   double dt = 1.0 / 200.0) {
  SeekerState seeker;
  double min_range = (target_pos - missile.position).norm();
  while (missile.elapsed < config.effective_time) {
    ChannelAccels cmd = guidance_command(seeker, missile, target_pos,
                                         target_vel, {}, config, dt);
    missile = step_missile(missile, cmd, dt);
    target_pos += target_vel * dt;
    min_range = std::min(min_range, (target_pos - missile.position).norm());
    if (min_range < config.lethal_radius) break;
  }
  return min_range;
}

MissileState aimed_at(const Vec3& from, const Vec3& target, double speed) {
  Vec3 d = target - from;
  MissileState m;
  m.position = from;
  m.speed = speed;
  m.heading = wrap_2pi(std::atan2(d.x, d.y));
  m.pitch = std::atan2(d.z, std::hypot(d.x, d.y));
  return m;
}

}  // namespace

TEST_CASE("pn channel products") {
  ChannelAccels a = pn_channel_accels({0.01, 0.0}, 4.0, 1000.0);
  CHECK(a.horizontal == doctest::Approx(40.0));
  CHECK(a.vertical == doctest::Approx(0.0));

  ChannelAccels b = pn_channel_accels({-0.02, 0.0}, 3.0, 1200.0);
  CHECK(b.horizontal == doctest::Approx(-72.0));

  ChannelAccels c = pn_channel_accels({0.0, 0.0}, 5.0, 900.0);
  CHECK(c.horizontal == 0.0);
  CHECK(c.vertical == 0.0);
}

TEST_CASE("apn adds the perpendicular target acceleration") {
  Vec3 missile_pos{0.0, 0.0, 0.0};
  Vec3 target_pos{0.0, 10000.0, 0.0};  // due north: perp_h points east

  SUBCASE("unaccelerated target reduces to pn") {
    ChannelAccels pn = pn_channel_accels({0.01, 0.002}, 4.0, 1000.0);
    ChannelAccels apn = apn_channel_accels({0.01, 0.002}, 4.0, 3.0, 1000.0,
                                           missile_pos, target_pos, {});
    CHECK(apn.horizontal == doctest::Approx(pn.horizontal));
    CHECK(apn.vertical == doctest::Approx(pn.vertical));
  }
  SUBCASE("pure horizontal target acceleration") {
    ChannelAccels a = apn_channel_accels({0.0, 0.0}, 4.0, 2.0, 1000.0,
                                         missile_pos, target_pos,
                                         {50.0, 0.0, 0.0});
    CHECK(a.horizontal == doctest::Approx(100.0));
    CHECK(a.vertical == doctest::Approx(0.0));
  }
  SUBCASE("combined") {
    ChannelAccels a = apn_channel_accels({0.01, 0.0}, 4.0, 3.0, 1000.0,
                                         missile_pos, target_pos,
                                         {20.0, 0.0, 0.0});
    CHECK(a.horizontal == doctest::Approx(100.0));  // 40 + 60
  }
}

TEST_CASE("overload truncation is proportional") {
  double g60 = 60.0 * kG0;
  ChannelAccels cmd{g60 * std::cos(0.7), g60 * std::sin(0.7)};
  ChannelAccels out = truncate_overload(cmd, 50.0);
  CHECK(missile_overload(out) == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(std::atan2(out.vertical, out.horizontal) == doctest::Approx(0.7));
  CHECK(out.horizontal == doctest::Approx(cmd.horizontal * 5.0 / 6.0));

  ChannelAccels small{10.0, -5.0};
  ChannelAccels same = truncate_overload(small, 50.0);
  CHECK(same.horizontal == 10.0);
  CHECK(same.vertical == -5.0);

  ChannelAccels zero = truncate_overload({0.0, 0.0}, 50.0);
  CHECK(zero.horizontal == 0.0);
  CHECK(zero.vertical == 0.0);
}

TEST_CASE("response lag is a convex tracker") {
  MissileState m;
  SUBCASE("zero response time passes the command through") {
    ChannelAccels out = apply_response_lag(m, {100.0, -50.0}, 0.005, 0.0);
    CHECK(out.horizontal == 100.0);
    CHECK(out.vertical == -50.0);
  }
  SUBCASE("achieved overload never exceeds a capped command") {
    Rng rng(3);
    double cap = 45.0;
    for (int i = 0; i < 2000; ++i) {
      double ang = rng.uniform(0.0, 2.0 * kPi);
      double mag = rng.uniform(0.0, 80.0) * kG0;
      ChannelAccels cmd =
          truncate_overload({mag * std::cos(ang), mag * std::sin(ang)}, cap);
      ChannelAccels achieved = apply_response_lag(m, cmd, 0.005, 0.4);
      CHECK(missile_overload(achieved) <= cap + 1e-9);
    }
  }
  SUBCASE("converges to a constant command") {
    MissileState s;
    ChannelAccels cmd{200.0, -100.0};
    ChannelAccels out;
    for (int i = 0; i < 4000; ++i) out = apply_response_lag(s, cmd, 0.005, 0.4);
    CHECK(out.horizontal == doctest::Approx(200.0).epsilon(1e-6));
    CHECK(out.vertical == doctest::Approx(-100.0).epsilon(1e-6));
  }
}

TEST_CASE("ballistic step") {
  MissileState m;
  m.position = {100.0, 200.0, 5000.0};
  m.speed = 900.0;
  m.heading = 0.7;
  m.pitch = -0.1;
  double dt = 1.0 / 200.0;
  MissileState next = step_missile(m, {0.0, 0.0}, dt);
  Vec3 expect = m.position + m.velocity() * dt;
  CHECK((next.position - expect).norm() == doctest::Approx(0.0));
  CHECK(next.elapsed == doctest::Approx(dt));
  CHECK(next.speed == m.speed);
}

TEST_CASE("heading rate from horizontal accel") {
  MissileState m;
  m.speed = 1000.0;
  m.position = {0.0, 0.0, 5000.0};
  double dt = 1.0 / 200.0;
  MissileState next = step_missile(m, {m.speed * 0.1, 0.0}, dt);
  CHECK(wrap_pi(next.heading - m.heading) / dt == doctest::Approx(0.1));
}

TEST_CASE("sustained max-g turn radius") {
  MissileState m;
  m.speed = 1000.0;
  m.position = {0.0, 0.0, 5000.0};
  double accel = 50.0 * kG0;
  double radius = m.speed * m.speed / accel;
  double dt = 1.0 / 200.0;
  double quarter_time = (kPi / 2.0) / (accel / m.speed);
  int steps = static_cast<int>(std::round(quarter_time / dt));
  Vec3 start = m.position;
  for (int i = 0; i < steps; ++i) m = step_missile(m, {accel, 0.0}, dt);
  double displacement = (m.position - start).norm();
  CHECK(displacement == doctest::Approx(radius * std::sqrt(2.0)).epsilon(0.01));
  CHECK(radius == doctest::Approx(2039.0).epsilon(0.001));
}

TEST_CASE("outcome checks") {
  GuidanceConfig config;
  MissileState m;
  m.position = {9.99, 0.0, 0.0};
  m.elapsed = 10.0;
  CHECK(check_outcome({0.0, 0.0, 0.0}, m, config) == Outcome::Hit);
  m.position = {10.01, 0.0, 0.0};
  CHECK(check_outcome({0.0, 0.0, 0.0}, m, config) == Outcome::Ongoing);
  m.elapsed = 25.0;
  m.position = {500.0, 0.0, 0.0};
  CHECK(check_outcome({0.0, 0.0, 0.0}, m, config) == Outcome::Expired);
  m.position = {5.0, 0.0, 0.0};
  CHECK(check_outcome({0.0, 0.0, 0.0}, m, config) == Outcome::Hit);
}

TEST_CASE("speed is constant along any guided trajectory") {
  GuidanceConfig config;
  config.navigation_gain = 4.0;
  SeekerState seeker;
  MissileState m = aimed_at({0.0, 0.0, 5000.0}, {0.0, 12000.0, 5200.0}, 1100.0);
  Vec3 target{0.0, 12000.0, 5200.0};
  Vec3 tvel{150.0, -200.0, 10.0};
  double dt = 1.0 / 200.0;
  for (int i = 0; i < 2000; ++i) {
    ChannelAccels cmd = guidance_command(seeker, m, target, tvel, {}, config, dt);
    m = step_missile(m, cmd, dt);
    target += tvel * dt;
    CHECK(m.velocity().norm() == doctest::Approx(1100.0).epsilon(1e-9));
  }
}

TEST_CASE("pn intercepts a straight-line target") {
  // Head-on, beam, and tail-chase from 10 km; the full grid runs in the
  // acceptance suite.
  GuidanceConfig config;
  config.navigation_gain = 4.0;
  config.max_overload_g = 45.0;
  Vec3 target_pos{0.0, 10000.0, 5000.0};
  Vec3 head_on{0.0, -300.0, 0.0};
  Vec3 beam{300.0, 0.0, 0.0};
  Vec3 tail{0.0, 300.0, 0.0};
  for (const Vec3& tvel : {head_on, beam, tail}) {
    MissileState m = aimed_at({0.0, 0.0, 5000.0}, target_pos, 1100.0);
    double miss = run_against_straight_target(config, target_pos, tvel, m);
    CHECK(miss < 10.0);
  }
}

TEST_CASE("apn with zero correction is bit-identical to pn") {
  GuidanceConfig pn_config;
  pn_config.law = GuidanceLaw::PN;
  pn_config.navigation_gain = 3.5;
  GuidanceConfig apn_config = pn_config;
  apn_config.law = GuidanceLaw::APN;
  apn_config.accel_correction = 0.0;

  double dt = 1.0 / 200.0;
  Vec3 tpos{2000.0, 9000.0, 5500.0};
  Vec3 tvel{-250.0, 120.0, 0.0};
  Vec3 taccel{3.0, -2.0, 0.5};  // fed to both; only APN would use it
  MissileState a = aimed_at({0.0, 0.0, 5000.0}, tpos, 1000.0);
  MissileState b = a;
  SeekerState sa, sb;
  Vec3 pa = tpos, pb = tpos;
  for (int i = 0; i < 1500; ++i) {
    a = step_missile(a, guidance_command(sa, a, pa, tvel, taccel, pn_config, dt), dt);
    b = step_missile(b, guidance_command(sb, b, pb, tvel, taccel, apn_config, dt), dt);
    pa += tvel * dt;
    pb += tvel * dt;
    REQUIRE(a.position.x == b.position.x);
    REQUIRE(a.position.y == b.position.y);
    REQUIRE(a.position.z == b.position.z);
    REQUIRE(a.heading == b.heading);
    REQUIRE(a.pitch == b.pitch);
  }
}

TEST_CASE("range continuity") {
  GuidanceConfig config;
  SeekerState seeker;
  MissileState m = aimed_at({0.0, 0.0, 5000.0}, {0.0, 8000.0, 5000.0}, 1400.0);
  Vec3 target{0.0, 8000.0, 5000.0};
  Vec3 tvel{400.0, -200.0, 0.0};
  double dt = 1.0 / 200.0;
  double prev_range = (target - m.position).norm();
  for (int i = 0; i < 1000; ++i) {
    ChannelAccels cmd = guidance_command(seeker, m, target, tvel, {}, config, dt);
    m = step_missile(m, cmd, dt);
    target += tvel * dt;
    double range = (target - m.position).norm();
    CHECK(std::abs(range - prev_range) <= (1400.0 + 510.0) * dt + 1e-9);
    prev_range = range;
  }
}
