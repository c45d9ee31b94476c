#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>
#include <vector>

#include "rampsim/regions.hpp"
#include "rampsim/rng.hpp"
#include "rampsim/routing.hpp"

using namespace rampsim;

namespace {

CumulativeRouting bench_rt() {
  RoutingMatrix R;
  R.R = {{0.2, 0.7, 0.1}, {0.0, 0.8, 0.2}, {0.5, 0.0, 0.5}};
  return cumulative_routing(R);
}

bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

RoutingMatrix random_routing(RngStream& rng, int m) {
  RoutingMatrix R;
  R.R.assign(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i) {
    double sum = 0;
    for (int j = 0; j < m; ++j) {
      R.R[i][j] = rng.next_double();
      sum += R.R[i][j];
    }
    double acc = 0;
    for (int j = 0; j < m; ++j) {
      R.R[i][j] /= sum;
      acc += R.R[i][j];
    }
    R.R[i][m - 1] += 1.0 - acc;  // absorb rounding so the row sums to one
  }
  return R;
}

}  // namespace

TEST_CASE("benchmark cumulative routing is the expected matrix") {
  CumulativeRouting Rt = bench_rt();
  std::vector<std::vector<double>> want = {
      {1.0, 0.8, 0.1}, {0.0, 1.0, 0.2}, {0.5, 0.0, 1.0}};
  REQUIRE(Rt.size() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(close(Rt.Rt[i][j], want[i][j]));
}

TEST_CASE("variable-cycle region, two ramps fixed load, one binding constraint") {
  CumulativeRouting Rt = bench_rt();
  ThroughputRegion full = inner_region_renewal(Rt, {2, 3, 2});
  REQUIRE(full.dim == 3);
  REQUIRE(full.constraints.size() == 3);

  ThroughputRegion cut =
      restrict_region(full, {std::nullopt, std::nullopt, 0.5});
  REQUIRE(cut.dim == 2);
  REQUIRE(cut.constraints.size() == 1);
  CHECK(close(cut.constraints[0].a[0], 1.6));
  CHECK(close(cut.constraints[0].a[1], 1.0));
  CHECK(close(cut.constraints[0].b, 1.0));
  CHECK(cut.constraints[0].strict);

  double in[2] = {0.3, 0.5};   // 1.6*0.3 + 0.5 = 0.98
  double out[2] = {0.35, 0.5};  // 1.6*0.35 + 0.5 = 1.06
  CHECK(cut.contains(in));
  CHECK_FALSE(cut.contains(out));
}

TEST_CASE("fixed-cycle region, same slice, steeper second coefficient") {
  CumulativeRouting Rt = bench_rt();
  ThroughputRegion full = inner_region_fixed_cycle(Rt, {2, 3, 2});
  ThroughputRegion cut =
      restrict_region(full, {std::nullopt, std::nullopt, 0.5});
  REQUIRE(cut.constraints.size() == 1);
  CHECK(close(cut.constraints[0].a[0], 1.6));
  CHECK(close(cut.constraints[0].a[1], 2.0));
  CHECK(close(cut.constraints[0].b, 1.0));
}

TEST_CASE("uniform multiple two keeps two binding constraints") {
  CumulativeRouting Rt = bench_rt();
  std::vector<int> k = {2, 2, 2};
  // With every multiple at two the renewal and fixed-cycle formulas agree.
  for (ThroughputRegion full :
       {inner_region_renewal(Rt, k), inner_region_fixed_cycle(Rt, k)}) {
    ThroughputRegion cut =
        restrict_region(full, {std::nullopt, std::nullopt, 0.5});
    REQUIRE(cut.constraints.size() == 2);
    CHECK(close(cut.constraints[0].a[0], 1.0));
    CHECK(close(cut.constraints[0].a[1], 0.0));
    CHECK(close(cut.constraints[0].b, 0.75));
    CHECK(close(cut.constraints[1].a[0], 0.8));
    CHECK(close(cut.constraints[1].a[1], 1.0));
    CHECK(close(cut.constraints[1].b, 1.0));
  }
}

TEST_CASE("equal-rate boundaries on the benchmark") {
  CumulativeRouting Rt = bench_rt();
  CHECK(close(outer_region(Rt).max_equal_rate(), 5.0 / 9.0));
  CHECK(close(inner_region_renewal(Rt, {2, 3, 2}).max_equal_rate(), 1.0 / 2.6));
  CHECK(close(inner_region_fixed_cycle(Rt, {2, 3, 2}).max_equal_rate(), 1.0 / 3.6));
  // The necessary bound is attainable in the closed region, 5/9 exactly.
  std::vector<double> lam(3, 5.0 / 9.0);
  CHECK(outer_region(Rt).contains(lam));
  lam.assign(3, 5.0 / 9.0 + 1e-9);
  CHECK_FALSE(outer_region(Rt).contains(lam));
}

TEST_CASE("region membership equals the direct per-link load check") {
  CumulativeRouting Rt = bench_rt();
  std::vector<int> k = {2, 3, 2};
  ThroughputRegion fixed = inner_region_fixed_cycle(Rt, k);
  ThroughputRegion renew = inner_region_renewal(Rt, k);
  RngStream rng(2024, "region-membership", 0);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> lam = {rng.next_double(), rng.next_double(),
                               rng.next_double()};
    std::vector<double> rho = link_loads(lam, Rt);
    bool want_fixed = true, want_renew = true;
    for (int i = 0; i < 3; ++i) {
      want_fixed = want_fixed && (k[i] - 1) * rho[i] < 1.0;
      want_renew = want_renew && (k[i] - 1) * rho[i] - (k[i] - 2) * lam[i] < 1.0;
    }
    CHECK(fixed.contains(lam) == want_fixed);
    CHECK(renew.contains(lam) == want_renew);
  }
}

TEST_CASE("fixed-cycle region nests inside renewal region inside outer closure") {
  RngStream rng(77, "region-nesting", 0);
  for (int trial = 0; trial < 300; ++trial) {
    int m = 2 + static_cast<int>(rng.next_below(3));
    RoutingMatrix R = random_routing(rng, m);
    CumulativeRouting Rt = cumulative_routing(R);
    std::vector<int> k(m);
    for (int i = 0; i < m; ++i) k[i] = 2 + static_cast<int>(rng.next_below(3));
    ThroughputRegion fixed = inner_region_fixed_cycle(Rt, k);
    ThroughputRegion renew = inner_region_renewal(Rt, k);
    ThroughputRegion outer = outer_region(Rt);
    for (int probe = 0; probe < 20; ++probe) {
      std::vector<double> lam(m);
      for (double& l : lam) l = rng.next_double();
      if (fixed.contains(lam)) CHECK(renew.contains(lam));
      if (renew.contains(lam)) CHECK(outer.contains(lam));
    }
    // Equal-rate boundaries respect the same ordering.
    CHECK(fixed.max_equal_rate() <= renew.max_equal_rate() + 1e-12);
    CHECK(renew.max_equal_rate() <= outer.max_equal_rate() + 1e-12);
  }
}

TEST_CASE("restriction preserves membership of the sliced region") {
  RngStream rng(31, "region-slice", 0);
  CumulativeRouting Rt = bench_rt();
  ThroughputRegion full = inner_region_renewal(Rt, {2, 3, 2});
  for (int trial = 0; trial < 1000; ++trial) {
    double fix = rng.next_double();
    ThroughputRegion cut = restrict_region(full, {std::nullopt, std::nullopt, fix});
    double l1 = rng.next_double(), l2 = rng.next_double();
    std::vector<double> lam3 = {l1, l2, fix};
    std::vector<double> lam2 = {l1, l2};
    CHECK(full.contains(lam3) == cut.contains(lam2));
  }
}

TEST_CASE("restriction drops nothing when no coordinate is fixed") {
  CumulativeRouting Rt = bench_rt();
  ThroughputRegion full = inner_region_renewal(Rt, {2, 3, 2});
  ThroughputRegion same =
      restrict_region(full, {std::nullopt, std::nullopt, std::nullopt});
  CHECK(same.constraints.size() == full.constraints.size());
}

TEST_CASE("restriction to an empty slice throws") {
  ThroughputRegion reg;
  reg.dim = 2;
  LinearConstraint c;
  c.a = {0.0, 1.0};
  c.b = 0.4;
  c.strict = false;
  reg.constraints.push_back(c);
  CHECK_THROWS_AS(restrict_region(reg, {std::nullopt, 0.5}), std::domain_error);
}

TEST_CASE("multiples below two are rejected") {
  CumulativeRouting Rt = bench_rt();
  CHECK_THROWS_AS(inner_region_renewal(Rt, {1, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(inner_region_fixed_cycle(Rt, {2, 2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(inner_region_renewal(Rt, {2, 2}), std::invalid_argument);
}
