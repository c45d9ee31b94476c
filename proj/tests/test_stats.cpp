#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rampsim/rng.hpp"
#include "rampsim/stats.hpp"

using namespace rampsim;

TEST_CASE("student t quantiles match table values") {
  // Reference values from standard tables, 97.5th percentile.
  CHECK(t_quantile(0.975, 3) == doctest::Approx(3.182446).epsilon(1e-5));
  CHECK(t_quantile(0.975, 9) == doctest::Approx(2.262157).epsilon(1e-5));
  CHECK(t_quantile(0.975, 49) == doctest::Approx(2.009575).epsilon(1e-5));
  CHECK(t_quantile(0.95, 10) == doctest::Approx(1.812461).epsilon(1e-5));
  // Large df approaches the normal quantile.
  CHECK(t_quantile(0.975, 100000) == doctest::Approx(1.959964).epsilon(1e-4));
  // Symmetry and median.
  CHECK(t_quantile(0.5, 7) == doctest::Approx(0.0).scale(1));
  CHECK(t_quantile(0.025, 9) == doctest::Approx(-2.262157).epsilon(1e-5));
}

TEST_CASE("batch means recovers the mean of iid noise with stated coverage") {
  const double mu = 5.0;
  int covered = 0;
  for (int rep = 0; rep < 100; ++rep) {
    RngStream rng(900 + rep, "batch-means-coverage", rep);
    std::vector<double> series(4000);
    for (double& s : series) s = mu + rng.next_normal();
    BatchMeansResult r = batch_means(series, 400, 180);
    REQUIRE(r.ok);
    CHECK(r.batches == 20);
    if (std::abs(r.mean - mu) <= r.half_width) ++covered;
  }
  // Nominal coverage is 95 of 100; demand at least 90 to keep noise room.
  CHECK(covered >= 90);
}

TEST_CASE("batch means is shift equivariant") {
  RngStream rng(12, "batch-shift", 0);
  std::vector<double> a(1000), b(1000);
  for (int i = 0; i < 1000; ++i) {
    a[i] = rng.next_normal();
    b[i] = a[i] + 42.0;
  }
  BatchMeansResult ra = batch_means(a, 100, 90);
  BatchMeansResult rb = batch_means(b, 100, 90);
  REQUIRE(ra.ok);
  REQUIRE(rb.ok);
  CHECK(rb.mean == doctest::Approx(ra.mean + 42.0).epsilon(1e-12));
  CHECK(rb.half_width == doctest::Approx(ra.half_width).epsilon(1e-9));
}

TEST_CASE("batch means refuses series with fewer than two batches") {
  std::vector<double> tiny(50, 1.0);
  CHECK_FALSE(batch_means(tiny, 0, 30).ok);
  CHECK_FALSE(batch_means(tiny, 40, 10).ok);
  CHECK(batch_means(tiny, 0, 25).ok);
}

TEST_CASE("slope regression flags growth and tolerates stationary noise") {
  RngStream rng(7, "slope-classify", 0);
  std::vector<double> flat(600), growing(600);
  for (int i = 0; i < 600; ++i) {
    double noise = rng.next_normal();
    flat[i] = 10.0 + noise;
    growing[i] = 0.05 * i + noise;
  }
  SlopeFit f_flat = regression_slope(flat);
  CHECK_FALSE(f_flat.excludes_zero);
  SlopeFit f_grow = regression_slope(growing);
  CHECK(f_grow.excludes_zero);
  CHECK(f_grow.slope == doctest::Approx(0.05).epsilon(0.1));

  CHECK_FALSE(saturated_by_slope(flat));
  CHECK(saturated_by_slope(growing));
  // Transient then flat: the trailing-half fit must not flag saturation.
  std::vector<double> settle(600);
  for (int i = 0; i < 600; ++i)
    settle[i] = (i < 150 ? 0.2 * i : 30.0) + 0.5 * rng.next_normal();
  CHECK_FALSE(saturated_by_slope(settle));
}

TEST_CASE("slope on an exact line has zero-width interval") {
  std::vector<double> line(100);
  for (int i = 0; i < 100; ++i) line[i] = 3.0 + 2.0 * i;
  SlopeFit f = regression_slope(line);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(f.half_width <= 1e-9);
  CHECK(f.excludes_zero);
}
