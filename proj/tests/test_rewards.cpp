#include <cmath>

#include "doctest.h"
#include "evade/angles.hpp"
#include "evade/rewards.hpp"
#include "evade/rng.hpp"

using namespace evade;

TEST_CASE("steep turn reward") {
  CHECK(reward_steep_turn(deg2rad(85.0), 0.0, +1).total ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(reward_steep_turn(deg2rad(-85.0), 0.0, -1).total ==
        doctest::Approx(1.0).epsilon(1e-9));
  // off-target roll: 0.5 + 0.5 e^{-1.4835.../0.2}
  double expect = 0.5 + 0.5 * std::exp(-deg2rad(85.0) / 0.2);
  CHECK(reward_steep_turn(0.0, 0.0, +1).total ==
        doctest::Approx(expect).epsilon(1e-9));
  CHECK(reward_steep_turn(0.0, 0.0, +1).total ==
        doctest::Approx(0.50030).epsilon(1e-4));
  // side 0 breaks ties toward +1
  CHECK(reward_steep_turn(deg2rad(85.0), 0.0, 0).total ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("short distance reward adds the los term") {
  RewardBreakdown base = reward_steep_turn(0.3, 0.05, +1);
  SUBCASE("zero rate") {
    RewardBreakdown r = reward_short_distance(0.3, 0.05, +1, 0.0);
    CHECK(r.total == doctest::Approx(base.total).epsilon(1e-12));
  }
  SUBCASE("positive and negative rate") {
    RewardBreakdown r = reward_short_distance(0.3, 0.05, +1, 0.1);
    CHECK(r.los == doctest::Approx(0.6 * std::tanh(1.0)).epsilon(1e-9));
    CHECK(r.los == doctest::Approx(0.45695).epsilon(1e-4));
    RewardBreakdown n = reward_short_distance(0.3, 0.05, +1, -0.1);
    CHECK(n.los == doctest::Approx(-r.los).epsilon(1e-12));
  }
  SUBCASE("difference from steep turn depends only on side and rate") {
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
      double roll = rng.uniform(-kPi, kPi);
      double pitch = rng.uniform(-1.0, 1.0);
      int side = rng.uniform() < 0.5 ? -1 : 1;
      double rate = rng.uniform(-0.5, 0.5);
      double diff = reward_short_distance(roll, pitch, side, rate).total -
                    reward_steep_turn(roll, pitch, side).total;
      CHECK(diff == doctest::Approx(0.6 * std::tanh(side * rate / 0.1))
                        .epsilon(1e-12));
    }
  }
}

TEST_CASE("small azimuth reward") {
  CHECK(reward_small_azimuth(0.0, 0.0, 0.0, 350.0).total ==
        doctest::Approx(2.0).epsilon(1e-12));

  RewardBreakdown r = reward_small_azimuth(0.0, 0.0, 0.2, 350.0);
  CHECK(r.azimuth == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(r.total == doctest::Approx(1.0 + std::exp(-1.0)).epsilon(1e-9));

  // slow flight fires the velocity constraint
  RewardBreakdown slow = reward_small_azimuth(0.0, 0.0, 0.0, 230.0);
  CHECK(slow.constraint_velocity == -20.0);
  CHECK(slow.velocity == doctest::Approx(0.2 * std::tanh(-1.5)).epsilon(1e-9));
  CHECK(slow.total == doctest::Approx(2.0 - 0.2 * std::tanh(1.5) - 20.0)
                          .epsilon(1e-9));
  CHECK(slow.total == doctest::Approx(-18.18103).epsilon(1e-4));
}

TEST_CASE("small azimuth constraints are strict at the boundary") {
  // exactly at the threshold: no penalty
  CHECK(reward_small_azimuth(deg2rad(135.0), 0.0, 0.0, 350.0).constraint_roll ==
        0.0);
  CHECK(reward_small_azimuth(deg2rad(135.0) + 1e-9, 0.0, 0.0, 350.0)
            .constraint_roll == -20.0);
  CHECK(reward_small_azimuth(0.0, deg2rad(22.5), 0.0, 350.0).constraint_pitch ==
        0.0);
  CHECK(reward_small_azimuth(0.0, deg2rad(22.5) + 1e-9, 0.0, 350.0)
            .constraint_pitch == -20.0);
  CHECK(reward_small_azimuth(0.0, 0.0, deg2rad(30.0), 350.0)
            .constraint_azimuth == 0.0);
  CHECK(reward_small_azimuth(0.0, 0.0, deg2rad(30.0) + 1e-9, 350.0)
            .constraint_azimuth == -20.0);
  CHECK(reward_small_azimuth(0.0, 0.0, 0.0, 240.0).constraint_velocity == 0.0);
  CHECK(reward_small_azimuth(0.0, 0.0, 0.0, 240.0 - 1e-9).constraint_velocity ==
        -20.0);
  CHECK(reward_small_azimuth(0.0, 0.0, 0.0, 510.0).constraint_velocity == 0.0);
  CHECK(reward_small_azimuth(0.0, 0.0, 0.0, 510.0 + 1e-9).constraint_velocity ==
        -20.0);
}

TEST_CASE("large azimuth roll branch") {
  // far branch at target attitude
  RewardBreakdown far = reward_large_azimuth(deg2rad(85.0), 0.0, +1, 350.0, 9000.0);
  CHECK(far.total == doctest::Approx(1.0).epsilon(1e-9));
  // close branch, small roll
  RewardBreakdown close_ok = reward_large_azimuth(deg2rad(10.0), 0.0, +1, 350.0, 8000.0);
  CHECK(close_ok.roll == 0.5);
  CHECK(close_ok.total == doctest::Approx(1.0).epsilon(1e-9));
  // close branch, large roll
  RewardBreakdown close_bad = reward_large_azimuth(deg2rad(40.0), 0.0, +1, 350.0, 8000.0);
  CHECK(close_bad.roll == -20.0);
  CHECK(close_bad.total == doctest::Approx(-19.5).epsilon(1e-9));
}

TEST_CASE("large azimuth breakpoints sweep") {
  // the roll term is discontinuous only at range 8500 and |roll| 30 deg
  double at_branch = reward_large_azimuth(deg2rad(10.0), 0.0, +1, 350.0, 8500.0).roll;
  double above = reward_large_azimuth(deg2rad(10.0), 0.0, +1, 350.0, 8500.0 + 1e-6).roll;
  CHECK(at_branch == 0.5);  // 8500 exactly belongs to the close branch
  CHECK(above == doctest::Approx(0.5 * std::exp(-std::abs(deg2rad(10.0) - deg2rad(85.0)) / 0.2)));

  double just_in = reward_large_azimuth(deg2rad(30.0), 0.0, +1, 350.0, 8000.0).roll;
  double just_out = reward_large_azimuth(deg2rad(30.0) + 1e-9, 0.0, +1, 350.0, 8000.0).roll;
  CHECK(just_in == 0.5);
  CHECK(just_out == -20.0);

  // away from the breakpoints the term is locally continuous in range
  for (double range : {6000.0, 7000.0, 9000.0, 12000.0}) {
    double lo = reward_large_azimuth(0.4, 0.0, +1, 350.0, range - 1.0).roll;
    double hi = reward_large_azimuth(0.4, 0.0, +1, 350.0, range + 1.0).roll;
    CHECK(lo == doctest::Approx(hi).epsilon(1e-9));
  }
}

TEST_CASE("baseline per-step reward") {
  RewardBreakdown r = reward_baseline_step(1.0, 0.0, 0.0, 0.0);
  CHECK(r.total == doctest::Approx(0.5).epsilon(1e-12));  // ln 1 = 0

  RewardBreakdown capped = reward_baseline_step(0.0, 0.0, 0.0, 0.0);
  CHECK(capped.los == doctest::Approx(2.4 * std::log(1e-6)).epsilon(1e-9));

  RewardBreakdown loaded = reward_baseline_step(1.0, 30.0, 0.0, 0.0);
  CHECK(loaded.overload == doctest::Approx(-9.0).epsilon(1e-12));

  RewardBreakdown rolled = reward_baseline_step(1.0, 0.0, 0.0, deg2rad(140.0));
  CHECK(rolled.constraint_roll == -20.0);
}

TEST_CASE("baseline terminal reward") {
  // survived with min range 20.37
  CHECK(reward_baseline_terminal(20.37, 20.37).total ==
        doctest::Approx(8148.0).epsilon(1e-9));
  // hit with min range exactly at the lethal radius
  CHECK(reward_baseline_terminal(10.0, 5.0).total == doctest::Approx(0.0));
  // final range exactly 10 is not a hit (strict <): survive branch
  CHECK(reward_baseline_terminal(10.0, 10.0).total == doctest::Approx(4000.0));
  // hit with a closer approach
  CHECK(reward_baseline_terminal(4.0, 4.0).total ==
        doctest::Approx(-200.0 * 36.0).epsilon(1e-12));
}

TEST_CASE("term bounds and total consistency") {
  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    double roll = rng.uniform(-kPi, kPi);
    double pitch = rng.uniform(-kPi / 2.0, kPi / 2.0);
    double azimuth = rng.uniform(-kPi, kPi);
    double speed = rng.uniform(150.0, 510.0);
    double range = rng.uniform(5000.0, 15000.0);
    double rate = rng.uniform(-2.0, 2.0);
    int side = rng.uniform() < 0.5 ? -1 : 1;

    RewardBreakdown turn = reward_steep_turn(roll, pitch, side);
    CHECK(turn.roll > 0.0);
    CHECK(turn.roll <= 0.5);
    CHECK(turn.pitch > 0.0);
    CHECK(turn.pitch <= 0.5);
    CHECK(turn.total == doctest::Approx(turn.sum_terms()).epsilon(1e-12));

    RewardBreakdown sd = reward_short_distance(roll, pitch, side, rate);
    CHECK(std::abs(sd.los) <= 0.6);
    CHECK(sd.total == doctest::Approx(sd.sum_terms()).epsilon(1e-12));

    RewardBreakdown sm = reward_small_azimuth(roll, pitch, azimuth, speed);
    CHECK(std::abs(sm.velocity) <= 0.2);
    CHECK(sm.total == doctest::Approx(sm.sum_terms()).epsilon(1e-12));

    RewardBreakdown lg = reward_large_azimuth(roll, pitch, side, speed, range);
    CHECK(std::abs(lg.velocity) <= 0.3);
    CHECK(lg.total == doctest::Approx(lg.sum_terms()).epsilon(1e-12));

    // same inputs, bit-identical outputs
    CHECK(reward_small_azimuth(roll, pitch, azimuth, speed).total == sm.total);
  }
}
