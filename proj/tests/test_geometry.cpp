#include <cmath>

#include "doctest.h"
#include "evade/angles.hpp"
#include "evade/geometry.hpp"
#include "evade/rng.hpp"

using namespace evade;

TEST_CASE("azimuth sign convention") {
  // Aircraft heading north; azimuth is measured from the reversed heading.
  CHECK(azimuth_of(0.0, {0.0, -1000.0, 0.0}) == doctest::Approx(0.0));
  CHECK(azimuth_of(0.0, {0.0, 1000.0, 0.0}) == doctest::Approx(kPi));
  CHECK(azimuth_of(0.0, {1000.0, 0.0, 0.0}) == doctest::Approx(kPi / 2.0));
  CHECK(azimuth_of(0.0, {-1000.0, 0.0, 0.0}) == doctest::Approx(-kPi / 2.0));
}

TEST_CASE("azimuth degenerate vertical delta") {
  bool degenerate = false;
  CHECK(azimuth_of(1.0, {0.0, 0.0, 500.0}, &degenerate) == 0.0);
  CHECK(degenerate);
}

TEST_CASE("azimuth odd under reflection across the heading axis") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    double heading = rng.uniform(0.0, 2.0 * kPi);
    Vec3 d{rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4), rng.uniform(-5e3, 5e3)};
    if (std::hypot(d.x, d.y) < 1.0) continue;
    // Mirror the horizontal delta across the heading direction.
    double ch = std::cos(heading), sh = std::sin(heading);
    Vec3 h{sh, ch, 0.0};
    double along = d.x * h.x + d.y * h.y;
    Vec3 mirrored{2.0 * along * h.x - d.x, 2.0 * along * h.y - d.y, d.z};
    double a = azimuth_of(heading, d);
    double b = azimuth_of(heading, mirrored);
    if (std::abs(std::abs(a) - kPi) < 1e-9) continue;  // boundary convention
    CHECK(b == doctest::Approx(-a).epsilon(1e-9));
  }
}

TEST_CASE("elevation examples") {
  CHECK(elevation_of({1000.0, 0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(elevation_of({0.0, 0.0, 500.0}) == doctest::Approx(kPi / 2.0));
  CHECK(elevation_of({1000.0, 0.0, 1000.0}) == doctest::Approx(kPi / 4.0));
  CHECK_THROWS(elevation_of({0.0, 0.0, 0.0}));
}

TEST_CASE("side sign") {
  CHECK(side_sign({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}) == 1);
  CHECK(side_sign({-1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}) == -1);
  CHECK(side_sign({0.0, 2.0, 0.0}, {0.0, 1.0, 0.0}) == 0);
}

TEST_CASE("los rates chord formula") {
  Vec3 u0{1.0, 0.0, 0.0};
  SUBCASE("stationary") {
    auto [mag, sgn] = los_rates(u0, u0, 0.005);
    CHECK(mag == 0.0);
    CHECK(sgn == 0.0);
  }
  SUBCASE("rotation about +z") {
    Vec3 u1{std::cos(0.01), std::sin(0.01), 0.0};
    auto [mag, sgn] = los_rates(u0, u1, 0.005);
    // chord = 2 sin(0.005); rate = chord / 0.005
    double expect = 2.0 * std::sin(0.005) / 0.005;
    CHECK(mag == doctest::Approx(expect).epsilon(1e-12));
    CHECK(sgn == doctest::Approx(expect).epsilon(1e-12));
    auto [mag2, sgn2] = los_rates(u1, u0, 0.005);
    CHECK(mag2 == doctest::Approx(expect).epsilon(1e-12));
    CHECK(sgn2 == doctest::Approx(-expect).epsilon(1e-12));
  }
  SUBCASE("non-unit input rejected") {
    CHECK_THROWS(los_rates({2.0, 0.0, 0.0}, u0, 0.005));
    CHECK_THROWS(los_rates(u0, u0, 0.0));
  }
}

TEST_CASE("los rate magnitude invariant under joint rotation about up") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    double a0 = rng.uniform(0.0, 2.0 * kPi);
    double a1 = a0 + rng.uniform(-0.2, 0.2);
    double rot = rng.uniform(0.0, 2.0 * kPi);
    Vec3 u0{std::cos(a0), std::sin(a0), 0.0};
    Vec3 u1{std::cos(a1), std::sin(a1), 0.0};
    Vec3 r0{std::cos(a0 + rot), std::sin(a0 + rot), 0.0};
    Vec3 r1{std::cos(a1 + rot), std::sin(a1 + rot), 0.0};
    auto [m, s] = los_rates(u0, u1, 0.005);
    auto [mr, sr] = los_rates(r0, r1, 0.005);
    CHECK(mr == doctest::Approx(m).epsilon(1e-9));
    // Horizontal reflection flips the signed rate.
    Vec3 f0{u0.x, -u0.y, 0.0};
    Vec3 f1{u1.x, -u1.y, 0.0};
    auto [mf, sf] = los_rates(f0, f1, 0.005);
    CHECK(mf == doctest::Approx(m).epsilon(1e-9));
    CHECK(sf == doctest::Approx(-s).epsilon(1e-9));
  }
}

TEST_CASE("smoother") {
  LosSmoother sm;
  CHECK(sm.update(0.2) == doctest::Approx(0.2));  // seeded with first sample
  sm.reset();
  sm.update(0.0);
  CHECK(sm.update(0.1) == doctest::Approx(0.025));

  SUBCASE("fixed point under constant input") {
    LosSmoother s2;
    s2.update(0.0);
    double out = 0.0;
    for (int i = 0; i < 200; ++i) out = s2.update(0.7);
    CHECK(out == doctest::Approx(0.7).epsilon(1e-9));
  }
  SUBCASE("convex combination") {
    LosSmoother s3;
    Rng rng(3);
    double prev = rng.uniform(-1.0, 1.0);
    s3.update(prev);
    for (int i = 0; i < 100; ++i) {
      double raw = rng.uniform(-1.0, 1.0);
      double out = s3.update(raw);
      CHECK(out >= std::min(raw, prev) - 1e-15);
      CHECK(out <= std::max(raw, prev) + 1e-15);
      prev = out;
    }
  }
}

TEST_CASE("closing velocity") {
  CHECK(closing_velocity({10000.0, 0.0, 0.0}, {-1100.0, 0.0, 0.0}) ==
        doctest::Approx(1100.0));
  CHECK(closing_velocity({10000.0, 0.0, 0.0}, {300.0, 0.0, 0.0}) ==
        doctest::Approx(-300.0));
  CHECK(closing_velocity({10000.0, 0.0, 0.0}, {0.0, 250.0, 0.0}) ==
        doctest::Approx(0.0));
  CHECK_THROWS(closing_velocity({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}));
}

TEST_CASE("closing velocity matches finite-difference range derivative") {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    Vec3 p{rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4), rng.uniform(1e3, 9e3)};
    Vec3 v{rng.uniform(-800.0, 800.0), rng.uniform(-800.0, 800.0),
           rng.uniform(-100.0, 100.0)};
    if (p.norm() < 100.0) continue;
    double vc = closing_velocity(p, v);
    double h = 1e-4;
    double r_plus = (p + v * h).norm();
    double r_minus = (p - v * h).norm();
    double deriv = (r_plus - r_minus) / (2.0 * h);
    CHECK(vc == doctest::Approx(-deriv).epsilon(1e-6));
  }
}
