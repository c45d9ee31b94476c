#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rampsim/controller.hpp"
#include "rampsim/params.hpp"

using namespace rampsim;

TEST_CASE("mode transitions with hysteresis") {
  Params p;
  using DM = DriveMode;
  // violation drops to gap regulation immediately
  CHECK(update_mode(DM::speed_tracking, 20.0, 26.5, false, p) == DM::safety);
  CHECK(update_mode(DM::speed_tracking, 26.5, 26.5, false, p) == DM::speed_tracking);
  CHECK(update_mode(DM::speed_tracking, 40.0, 26.5, true, p) == DM::safety);
  // recovery needs margin
  CHECK(update_mode(DM::safety, 26.6, 26.5, false, p) == DM::safety);
  CHECK(update_mode(DM::safety, 27.1, 26.5, false, p) == DM::speed_tracking);
  CHECK(update_mode(DM::safety, 40.0, 26.5, true, p) == DM::safety);
  // idempotent: feeding the output state back with the same inputs is stable
  for (double gap : {10.0, 26.5, 26.9, 27.5, 50.0}) {
    DM once = update_mode(DM::speed_tracking, gap, 26.5, false, p);
    CHECK(update_mode(once, gap, 26.5, false, p) == once);
  }
}

TEST_CASE("gap-regulation command") {
  Params p;
  // at the target spacing with matched speeds the command vanishes
  double v = 10.0;
  CHECK(safety_mode_accel(p.h * v + p.S0, v, v, p) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  // saturation on both sides
  CHECK(safety_mode_accel(0.5, 15.0, 0.0, p) == doctest::Approx(p.a_min));
  CHECK(safety_mode_accel(500.0, 0.0, 15.0, p) == doctest::Approx(p.a_max));
  // small positive error pulls forward
  CHECK(safety_mode_accel(p.h * v + p.S0 + 2.0, v, v, p) == doctest::Approx(0.2).epsilon(1e-12));
}

namespace {

struct Car {
  double x, v, a;
};

// jerk-limited pursuit of the commanded acceleration
void advance(Car& c, double cmd, const Params& p, double dt) {
  double da = std::clamp(cmd - c.a, -p.J_max * dt, p.J_max * dt);
  c.a += da;
  c.v = std::clamp(c.v + c.a * dt, 0.0, p.v_cap());
  c.x += c.v * dt;
}

}  // namespace

TEST_CASE("a ten-vehicle platoon settles behind a free-flow leader") {
  Params p;
  const double dt = 0.05;
  const double v0 = 6.7;
  const double gap0 = p.h * v0 + p.S0;

  std::vector<Car> cars(11);
  cars[0] = {0.0, p.Vf, 0.0};  // leader cruising at Vf
  for (int i = 1; i <= 10; ++i)
    cars[i] = {cars[i - 1].x - gap0 - p.L, v0, 0.0};

  double t_converged = -1;
  std::vector<double> deviation_log;
  for (double t = 0; t < 240.0; t += dt) {
    // followers read the time-t snapshot; the descending order keeps each
    // leader untouched until its follower has been advanced
    for (int i = 10; i >= 1; --i) {
      double gap = cars[i - 1].x - cars[i].x - p.L;
      REQUIRE(gap > 0.0);  // no contact, ever
      double cmd = safety_mode_accel(gap, cars[i].v, cars[i - 1].v, p);
      advance(cars[i], cmd, p, dt);
    }
    cars[0].x += p.Vf * dt;
    double dev = 0;
    for (int i = 1; i <= 10; ++i) dev += std::abs(cars[i].v - p.Vf);
    deviation_log.push_back(dev);
    if (t_converged < 0 && dev < 0.01 * 10) t_converged = t;
  }
  CHECK(t_converged >= 0);
  CHECK(t_converged < 120.0);

  // spacing settles at the equal-speed target
  for (int i = 1; i <= 10; ++i) {
    double gap = cars[i - 1].x - cars[i].x - p.L;
    CHECK(gap == doctest::Approx(p.h * p.Vf + p.S0).epsilon(0.01));
  }

  // aggregate speed deviation decays exponentially: log-linear fit on the
  // mid-transient window should be close to a straight line
  int lo = static_cast<int>(10.0 / dt), hi = static_cast<int>(80.0 / dt);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int n = 0;
  for (int k = lo; k < hi; ++k) {
    if (deviation_log[k] <= 1e-12) break;
    double x = k * dt, y = std::log(deviation_log[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++n;
  }
  double cov = sxy - sx * sy / n;
  double vx = sxx - sx * sx / n;
  double vy = syy - sy * sy / n;
  double slope = cov / vx;
  double r2 = cov * cov / (vx * vy);
  CHECK(slope < 0.0);
  CHECK(r2 > 0.95);
}
