#ifndef RAMPSIM_PROBE_HPP
#define RAMPSIM_PROBE_HPP

#include <string>
#include <vector>

#include "rampsim/scenario.hpp"

namespace rampsim {

struct ProbeConfig {
  int seeds = 3;              // replications per demand level, majority vote
  long horizon = 200000;      // steps per classification run
  double tol = 0.04;          // stop once the bracket is this tight
  int max_iters = 12;
  double queue_blowup = 2000; // total queue that ends a run as saturated
  double min_slope = 1e-3;
  double confidence = 0.95;
  bool check_endpoints = true;  // verify lo is stable and hi saturated first
};

struct ProbePoint {
  double lambda = 0;
  bool saturated = false;  // majority across seeds
  int votes_saturated = 0;
  int seeds = 0;
  double slope = 0;        // mean trailing-half queue growth across seeds
  double slope_ci_half = 0;
  long horizon = 0;
};

struct ProbeResult {
  bool ok = false;   // lo classified stable and hi saturated
  double lo = 0;     // highest demand classified stable
  double hi = 0;     // lowest demand classified saturated
  std::vector<ProbePoint> points;  // every level that was classified
};

// Classify one demand level: run `seeds` replications with every ramp's
// arrival probability set to `lambda` and vote on saturation.
ProbePoint classify_lambda(const Scenario& base, double lambda,
                           const ProbeConfig& cfg);

// Bisect the stable/saturated boundary of equal-demand arrivals inside
// [lo, hi].  Assumes stability is monotone in the rate.
ProbeResult saturation_probe(const Scenario& base, double lo, double hi,
                             const ProbeConfig& cfg = {});

void write_probe_csv(const std::string& path, const ProbeResult& pr);

}  // namespace rampsim

#endif
