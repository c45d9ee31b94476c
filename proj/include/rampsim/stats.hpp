#ifndef RAMPSIM_STATS_HPP
#define RAMPSIM_STATS_HPP

#include <span>

namespace rampsim {

// Two-sided Student-t quantile: P(T <= value) = prob.
double t_quantile(double prob, int df);

struct BatchMeansResult {
  bool ok = false;        // enough data for at least two full batches
  double mean = 0;
  double half_width = 0;  // confidence half interval for the steady mean
  double rel_margin = 0;  // half_width / |mean|
  int batches = 0;
  long warmup = 0;
  long batch_len = 0;
};

// Steady-state mean of a correlated series: drop `warmup` samples, average
// non-overlapping batches of `batch_len`, and treat the batch means as
// approximately independent.
BatchMeansResult batch_means(std::span<const double> series, long warmup,
                             long batch_len, double confidence = 0.95);

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double half_width = 0;  // confidence half interval on the slope
  bool excludes_zero = false;
};

// Ordinary least squares of y against sample index, with a t-based
// confidence interval on the slope.
SlopeFit regression_slope(std::span<const double> y, double confidence = 0.95);

// Saturation classifier: fit the trailing half of a queue-length series and
// call it saturated when the slope interval excludes zero and the growth
// rate is material.
bool saturated_by_slope(std::span<const double> queue_series,
                        double min_slope = 1e-3, double confidence = 0.95);

}  // namespace rampsim

#endif
