#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rampsim/profile.hpp"
#include "rampsim/rng.hpp"

using namespace rampsim;

TEST_CASE("three-phase plan from rest with gentle limits") {
  Params p;
  p.a_max = 2.0;
  p.J_max = 2.0;
  auto mp = MotionProfile::speed_tracking(0, 0, 0, 0, p);

  // ramp 1 s to a_max, hold 6.5 s, ramp 1 s back to zero
  REQUIRE(mp.segments().size() == 3);
  CHECK(mp.segments()[0].dt == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mp.segments()[1].dt == doctest::Approx(6.5).epsilon(1e-12));
  CHECK(mp.segments()[2].dt == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mp.end_time() == doctest::Approx(8.5).epsilon(1e-12));
  CHECK(mp.vel(mp.end_time()) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(mp.acc(mp.end_time() + 1e-9) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  // checkpoints evaluated by hand from the piecewise cubic
  CHECK(mp.pos(1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(mp.vel(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mp.pos(8.5) == doctest::Approx(63.75).epsilon(1e-12));
}

TEST_CASE("terminal state is exact for random initial conditions") {
  Params p;
  RngStream rng(5, "profile-prop");
  for (int trial = 0; trial < 100; ++trial) {
    double v0 = rng.next_double() * p.v_cap();
    double a0 = p.a_min + rng.next_double() * (p.a_max - p.a_min);
    auto mp = MotionProfile::speed_tracking(0, 0, v0, a0, p);

    CHECK(mp.vel(mp.end_time()) == doctest::Approx(p.Vf).epsilon(1e-9));
    CHECK(std::abs(mp.acc(mp.end_time())) < 1e-9);
    CHECK(mp.cruise_speed() == doctest::Approx(p.Vf).epsilon(1e-12));

    // kinematic limits and monotone position along the way
    double last_p = mp.pos(0), last_v = v0, last_a = a0;
    const double dt = 1e-3;
    for (double t = dt; t <= mp.end_time() + 1.0; t += dt) {
      double x = mp.pos(t), v = mp.vel(t), a = mp.acc(t);
      CHECK(x >= last_p - 1e-12);
      CHECK(a <= p.a_max + 1e-9);
      CHECK(a >= p.a_min - 1e-9);
      CHECK(std::abs(a - last_a) <= p.J_max * dt + 1e-9);
      // consistency of the closed forms
      CHECK(std::abs((x - last_p) / dt - 0.5 * (v + last_v)) < 1e-4);
      last_p = x;
      last_v = v;
      last_a = a;
    }
  }
}

TEST_CASE("overshoot at the target speed is shed and recovered") {
  Params p;  // a_max = 3.5, J_max = 10
  auto mp = MotionProfile::speed_tracking(0, 0, 14.9, 3.5, p);
  double vmax = 0;
  for (double t = 0; t <= mp.end_time(); t += 1e-3) vmax = std::max(vmax, mp.vel(t));
  CHECK(vmax > 15.0 + 1e-3);
  CHECK(mp.vel(mp.end_time()) == doctest::Approx(15.0).epsilon(1e-9));
}

TEST_CASE("deceleration toward target from above") {
  Params p;
  auto mp = MotionProfile::speed_tracking(0, 0, 20.0, 0.0, p);
  CHECK(mp.vel(mp.end_time()) == doctest::Approx(15.0).epsilon(1e-9));
  for (double t = 0; t < mp.end_time(); t += 1e-2) {
    CHECK(mp.acc(t) >= p.a_min - 1e-9);
    CHECK(mp.vel(t) >= 15.0 - 1e-9);
  }
}

TEST_CASE("position inversion is consistent") {
  Params p;
  auto mp = MotionProfile::speed_tracking(0, 10.0, 0, 0, p);
  for (double q : {10.5, 14.0, 25.0, 44.0, 200.0}) {
    double t = mp.time_at_pos(q);
    CHECK(mp.pos(t) == doctest::Approx(q).epsilon(1e-7));
  }
  // inverse beyond the plan extends along the cruise
  double t_far = mp.time_at_pos(10.0 + mp.end_pos() - 10.0 + 150.0);
  CHECK(t_far > mp.end_time());
}

TEST_CASE("degenerate plans") {
  Params p;
  auto done = MotionProfile::speed_tracking(3.0, 50.0, p.Vf, 0.0, p);
  CHECK(done.end_time() == doctest::Approx(3.0));
  CHECK(done.pos(5.0) == doctest::Approx(50.0 + 2.0 * p.Vf).epsilon(1e-12));

  auto cruise = MotionProfile::constant(1.0, 7.0, 4.0);
  CHECK(cruise.pos(2.5) == doctest::Approx(7.0 + 1.5 * 4.0).epsilon(1e-12));
  CHECK(cruise.vel(100.0) == doctest::Approx(4.0));
}
