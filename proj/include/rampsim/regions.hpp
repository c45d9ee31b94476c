#ifndef RAMPSIM_REGIONS_HPP
#define RAMPSIM_REGIONS_HPP

#include <optional>
#include <span>
#include <vector>

#include "rampsim/routing.hpp"

namespace rampsim {

// One half-space a . lambda (< or <=) b.
struct LinearConstraint {
  std::vector<double> a;
  double b = 0;
  bool strict = true;
};

// Intersection of half-spaces with the nonnegative orthant; demand vectors
// additionally live in [0, 1]^m because arrivals are Bernoulli.
struct ThroughputRegion {
  int dim = 0;
  std::vector<LinearConstraint> constraints;

  bool contains(std::span<const double> lambda, double tol = 1e-12) const;
  // Largest t such that (t, ..., t) is in the region (boundary value).
  double max_equal_rate() const;
};

// Sufficient stability region of the variable-cycle policy with release
// headway multiples k[i]:  (k_i - 1) rho_i - (k_i - 2) lambda_i < 1 per ramp.
ThroughputRegion inner_region_renewal(const CumulativeRouting& Rt,
                                      const std::vector<int>& k);

// Sufficient region of the fixed-cycle family:  (k_i - 1) rho_i < 1 per ramp.
ThroughputRegion inner_region_fixed_cycle(const CumulativeRouting& Rt,
                                          const std::vector<int>& k);

// Necessary region for any policy: every link load at most one slot per
// release period (non-strict).
ThroughputRegion outer_region(const CumulativeRouting& Rt);

// Substitute fixed demand coordinates and drop constraints that cannot bind
// anywhere in the remaining [0,1]^d box.
ThroughputRegion restrict_region(const ThroughputRegion& region,
                                 const std::vector<std::optional<double>>& fixed);

}  // namespace rampsim

#endif
