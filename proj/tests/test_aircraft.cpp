#include <cmath>

#include "doctest.h"
#include "evade/aircraft.hpp"
#include "evade/angles.hpp"
#include "evade/rng.hpp"

using namespace evade;

namespace {

AircraftState level_state(double speed = 300.0, double alt = 5000.0) {
  AircraftState s;
  s.position = {0.0, 0.0, alt};
  s.speed = speed;
  return s;
}

}  // namespace

TEST_CASE("trim holds altitude and heading") {
  AircraftParams params;
  AircraftState s = level_state();
  ControlAction trim{0.0, 0.0, 0.0, 0.4};
  double dt = 1.0 / 200.0;
  for (int i = 0; i < 1000; ++i) s = step_aircraft(s, trim, params, dt);
  CHECK(s.position.z == doctest::Approx(5000.0).epsilon(1e-6));
  CHECK(s.heading == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(s.pitch == doctest::Approx(0.0).epsilon(1e-6));
  CHECK_FALSE(s.ground_impact);
}

TEST_CASE("coordinated turn heading rate at 60 degrees bank") {
  AircraftParams params;
  AircraftState s = level_state(300.0);
  s.roll = deg2rad(60.0);
  double dt = 1.0 / 200.0;
  AircraftState next = step_aircraft(s, {0.0, 0.0, 0.0, 0.5}, params, dt);
  double rate = wrap_pi(next.heading - s.heading) / dt;
  CHECK(rate == doctest::Approx(kG0 * std::tan(deg2rad(60.0)) / 300.0)
                    .epsilon(1e-9));
  CHECK(rate == doctest::Approx(0.05664).epsilon(1e-3));
}

TEST_CASE("roll rate integration") {
  AircraftParams params;
  AircraftState s = level_state();
  double dt = 1.0 / 200.0;
  for (int i = 0; i < 100; ++i)
    s = step_aircraft(s, {0.0, 1.0, 0.0, 0.5}, params, dt);
  CHECK(s.roll == doctest::Approx(3.14 * 0.5).epsilon(1e-9));
}

TEST_CASE("load factor formula") {
  AircraftState s = level_state(300.0);
  CHECK(load_factor(s, 0.0, 0.0) == doctest::Approx(1.0));

  s.roll = deg2rad(60.0);
  double turn_rate = kG0 * std::tan(s.roll) / s.speed;
  CHECK(load_factor(s, turn_rate, 0.0) == doctest::Approx(2.0).epsilon(1e-9));

  AircraftState vertical = s;
  vertical.pitch = kPi / 2.0;
  CHECK(load_factor(vertical, 0.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("load clipping keeps any trajectory under the cap") {
  AircraftParams params;
  Rng rng(13);
  double dt = 1.0 / 200.0;
  for (int ep = 0; ep < 20; ++ep) {
    AircraftState s = level_state(rng.uniform(200.0, 470.0),
                                  rng.uniform(3000.0, 9000.0));
    s.roll = rng.uniform(-kPi, kPi);
    AircraftState prev = s;
    for (int i = 0; i < 400; ++i) {
      ControlAction a{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                      rng.uniform(-1.0, 1.0), rng.uniform(0.0, 1.0)};
      AircraftState next = step_aircraft(s, a, params, dt);
      double heading_rate = wrap_pi(next.heading - s.heading) / dt;
      double pitch_rate = (next.pitch - s.pitch) / dt;
      // pitch clamp at +-pi/2 can mask the commanded rate; skip those steps
      if (std::abs(next.pitch) < kPi / 2.0 - 1e-9) {
        CHECK(load_factor(s, heading_rate, pitch_rate) <=
              params.max_load_factor + 1e-6);
      }
      CHECK(next.speed >= params.min_speed);
      CHECK(next.speed <= params.max_speed);
      prev = s;
      s = next;
    }
  }
}

TEST_CASE("idle throttle never accelerates in level flight") {
  AircraftParams params;
  AircraftState s = level_state(460.0);
  double dt = 1.0 / 200.0;
  double prev_speed = s.speed;
  for (int i = 0; i < 2000; ++i) {
    s = step_aircraft(s, {0.0, 0.0, 0.0, 0.0}, params, dt);
    CHECK(s.speed <= prev_speed + 1e-12);
    prev_speed = s.speed;
  }
}

TEST_CASE("full throttle tops out near 470") {
  AircraftParams params;
  AircraftState s = level_state(300.0);
  double dt = 1.0 / 50.0;
  for (int i = 0; i < 50 * 120; ++i)
    s = step_aircraft(s, {0.0, 0.0, 0.0, 1.0}, params, dt);
  CHECK(s.speed > 455.0);
  CHECK(s.speed < 485.0);
}

TEST_CASE("ground impact flag") {
  AircraftParams params;
  AircraftState s = level_state(300.0, 1.0);
  s.pitch = -0.3;
  AircraftState next = step_aircraft(s, {0.0, 0.0, 0.0, 0.5}, params, 0.05);
  CHECK(next.ground_impact);
  CHECK(next.position.z == 0.0);
}

TEST_CASE("non-finite input rejected") {
  AircraftParams params;
  AircraftState s = level_state();
  s.speed = std::nan("");
  CHECK_THROWS(step_aircraft(s, {}, params, 0.005));
}
