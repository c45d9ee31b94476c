#ifndef RAMPSIM_DRIFT_HPP
#define RAMPSIM_DRIFT_HPP

#include <vector>

#include "rampsim/scenario.hpp"

namespace rampsim {

// One observed transition of an embedded chain: scalar summary `key`
// identifies where the chain was, v_* are the Lyapunov values.
struct DriftSample {
  double key = 0;
  double v_now = 0, v_next = 0;
};

struct DriftBucket {
  double key_lo = 0, key_hi = 0;
  long n = 0;
  double mean_delta = 0;  // estimate of E[V(next) - V(now) | bucket]
  double ci_half = 0;
};

struct DriftReport {
  long epochs = 0;
  std::vector<DriftBucket> buckets;  // equal-count, ordered by key
  // top bucket = largest keys; where negative drift must show for stability
  double tail_drift = 0;
  double tail_ci_half = 0;
  bool tail_negative = false;  // drift + CI below zero
  bool tail_positive = false;  // drift - CI above zero
  // excursion bound estimate: worst upward drift seen in the bottom bucket
  double b_est = 0;
};

// Split samples into `buckets` equal-count groups by key and estimate the
// expected one-step change of V in each.
DriftReport drift_report(std::vector<DriftSample> samples, int buckets = 10,
                         double confidence = 0.95);

// Cycle-length chain of a cycle-based policy: epochs at cycle starts,
// key = cycle length in release periods, V = key squared.  Runs until
// `min_epochs` transitions are observed or `max_steps` pass.
DriftReport renewal_cycle_drift(const Scenario& sc, long min_epochs = 200,
                                long max_steps = 200000);

// Per-period queue chain: key = largest single-ramp queue, V = key.
DriftReport queue_norm_drift(const Scenario& sc, long steps = 20000);

}  // namespace rampsim

#endif
