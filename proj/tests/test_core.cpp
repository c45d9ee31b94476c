#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rampsim/demand.hpp"
#include "rampsim/geometry.hpp"
#include "rampsim/params.hpp"
#include "rampsim/rng.hpp"
#include "rampsim/routing.hpp"

using namespace rampsim;

namespace {

Params base_params() {
  Params p;  // defaults carry the benchmark constants
  return p;
}

RoutingMatrix bench_routing() {
  RoutingMatrix R;
  R.R = {{0.2, 0.7, 0.1}, {0.0, 0.8, 0.2}, {0.5, 0.0, 0.5}};
  return R;
}

Geometry bench_geometry() {
  Geometry g;
  g.P = 1860.0;
  g.onramp_pos = {0.0, 620.0, 1240.0};
  g.offramp_pos = {465.0, 1085.0, 1705.0};
  g.merge_speed = {15.0, 15.0, 15.0};
  return g;
}

}  // namespace

TEST_CASE("release period and slot pitch") {
  Params p = base_params();
  CHECK(p.tau() == doctest::Approx(31.0 / 15.0).epsilon(1e-14));
  CHECK(p.pitch() == doctest::Approx(31.0).epsilon(1e-14));
  CHECK(slot_capacity(1860.0, p.pitch()) == 60);
  CHECK(slot_capacity(124.0, 31.0) == 4);
  // snapping drops the fractional slot
  CHECK(slot_capacity(1865.0, 31.0) == 60);
}

TEST_CASE("cumulative routing of the benchmark matrix") {
  auto Rt = cumulative_routing(bench_routing());
  REQUIRE(Rt.size() == 3);
  const double tol = 1e-12;
  CHECK(Rt.Rt[0][0] == doctest::Approx(1.0).epsilon(tol));
  CHECK(Rt.Rt[0][1] == doctest::Approx(0.8).epsilon(tol));
  CHECK(Rt.Rt[0][2] == doctest::Approx(0.1).epsilon(tol));
  CHECK(Rt.Rt[1][0] == doctest::Approx(0.0).scale(1).epsilon(tol));
  CHECK(Rt.Rt[1][1] == doctest::Approx(1.0).epsilon(tol));
  CHECK(Rt.Rt[1][2] == doctest::Approx(0.2).epsilon(tol));
  CHECK(Rt.Rt[2][0] == doctest::Approx(0.5).epsilon(tol));
  CHECK(Rt.Rt[2][1] == doctest::Approx(0.0).scale(1).epsilon(tol));
  CHECK(Rt.Rt[2][2] == doctest::Approx(1.0).epsilon(tol));
}

TEST_CASE("cumulative routing properties on random matrices") {
  RngStream rng(7, "routing-prop");
  for (int trial = 0; trial < 1000; ++trial) {
    int m = 2 + static_cast<int>(rng.next_below(5));
    RoutingMatrix R;
    R.R.assign(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i) {
      double s = 0;
      for (int j = 0; j < m; ++j) s += (R.R[i][j] = rng.next_double() + 1e-3);
      for (int j = 0; j < m; ++j) R.R[i][j] /= s;
    }
    auto Rt = cumulative_routing(R);
    for (int i = 0; i < m; ++i) {
      CHECK(Rt.Rt[i][i] == doctest::Approx(1.0).epsilon(1e-12));
      // shares can only drop as the trip proceeds around the ring
      for (int step = 0; step + 1 < m; ++step) {
        double a = Rt.Rt[i][(i + step) % m];
        double b = Rt.Rt[i][(i + step + 1) % m];
        CHECK(b <= a + 1e-12);
        CHECK(b >= -1e-12);
        CHECK(a <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("link loads of the benchmark demand") {
  auto Rt = cumulative_routing(bench_routing());
  auto rho = link_loads({0.5, 0.5, 0.5}, Rt);
  CHECK(rho[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(rho[1] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(rho[2] == doctest::Approx(0.65).epsilon(1e-12));

  auto rho2 = link_loads({0.455, 0.455, 0.455}, Rt);
  CHECK(rho2[1] == doctest::Approx(0.455 * 1.8).epsilon(1e-12));

  // linear in demand
  RngStream rng(11, "loads-prop");
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> lam = {rng.next_double(), rng.next_double(), rng.next_double()};
    double alpha = rng.next_double();
    auto a = link_loads(lam, Rt);
    std::vector<double> scaled = lam;
    for (double& x : scaled) x *= alpha;
    auto b = link_loads(scaled, Rt);
    for (int j = 0; j < 3; ++j) CHECK(b[j] == doctest::Approx(alpha * a[j]).epsilon(1e-12));
  }
}

TEST_CASE("rng streams are deterministic and decorrelated") {
  RngStream a(42, "alpha"), b(42, "alpha"), c(42, "beta");
  bool same = true, cross = true;
  for (int i = 0; i < 100; ++i) {
    auto x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
    same = same && (x == y);
    cross = cross && (x == z);
  }
  CHECK(same);
  CHECK_FALSE(cross);

  RngStream u(3, "uniform");
  double mean = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) mean += u.next_double();
  mean /= n;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("arrival sampler honors rates and replays exactly") {
  DemandSpec d;
  d.lambda = {0.3, 0.0, 1.0};
  d.seed = 99;
  ArrivalSampler s1(d, bench_routing());
  ArrivalSampler s2(d, bench_routing());

  const int steps = 20000;
  int count0 = 0, count2 = 0;
  std::vector<int> dest_hist(3, 0);
  for (int t = 0; t < steps; ++t) {
    auto a = s1.sample_step();
    auto b = s2.sample_step();
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].origin == b[k].origin);
      CHECK(a[k].destination == b[k].destination);
    }
    int per_ramp[3] = {0, 0, 0};
    for (auto& arr : a) {
      ++per_ramp[arr.origin];
      if (arr.origin == 0) {
        ++count0;
        ++dest_hist[arr.destination];
      }
      if (arr.origin == 2) ++count2;
      CHECK(arr.origin != 1);  // zero-rate ramp stays silent
    }
    for (int i = 0; i < 3; ++i) CHECK(per_ramp[i] <= 1);
  }
  // 4-sigma binomial band
  double sd = std::sqrt(steps * 0.3 * 0.7);
  CHECK(std::abs(count0 - steps * 0.3) < 4 * sd);
  CHECK(count2 == steps);
  // destinations follow the routing row (0.2, 0.7, 0.1)
  CHECK(std::abs(dest_hist[0] - 0.2 * count0) < 5 * std::sqrt(count0 * 0.2 * 0.8));
  CHECK(std::abs(dest_hist[1] - 0.7 * count0) < 5 * std::sqrt(count0 * 0.7 * 0.3));
}

TEST_CASE("slot system resolves the benchmark ring") {
  auto ss = build_slot_system(bench_geometry(), base_params());
  CHECK(ss.n_c == 60);
  CHECK(ss.P == doctest::Approx(1860.0).epsilon(1e-12));
  CHECK(ss.n_a >= 1);
  CHECK(ss.land_time == doctest::Approx(ss.n_a * ss.tau).epsilon(1e-12));
  CHECK(ss.profile_time <= ss.land_time + 1e-12);

  for (const auto& ramp : ss.ramps) {
    CHECK(ramp.merge_speed == doctest::Approx(15.0).epsilon(1e-9));
    CHECK(ramp.ramp_run == doctest::Approx(ss.profile_dist).epsilon(1e-12));
    // landing arcs all sit on one lattice
    double res = std::fmod(ramp.land_arc - ss.anchor, ss.pitch);
    if (res < 0) res += ss.pitch;
    CHECK((res < 1e-9 || ss.pitch - res < 1e-9));
  }
}

TEST_CASE("slot system aligns a slow merge with the lattice") {
  Geometry g = bench_geometry();
  g.merge_speed = {15.0, 5.0, 15.0};
  auto ss = build_slot_system(g, base_params());

  const auto& ramp = ss.ramps[1];
  // the resolver may nudge the merge point by less than half a pitch
  CHECK(ramp.merge_speed == doctest::Approx(5.0).epsilon(0.25));
  CHECK(ramp.merge_speed < 15.0);
  double res = std::fmod(ramp.land_arc - ss.anchor, ss.pitch);
  if (res < 0) res += ss.pitch;
  CHECK((res < 1e-9 || ss.pitch - res < 1e-9));
}

TEST_CASE("geometry validation rejects malformed input") {
  Geometry g = bench_geometry();
  g.offramp_pos.pop_back();
  CHECK_THROWS(build_slot_system(g, base_params()));

  Geometry g2 = bench_geometry();
  g2.merge_speed = {15.0, 0.0, 15.0};
  CHECK_THROWS(build_slot_system(g2, base_params()));

  RoutingMatrix bad;
  bad.R = {{0.5, 0.4}, {0.3, 0.3}};
  CHECK_THROWS(cumulative_routing(bad));
}
