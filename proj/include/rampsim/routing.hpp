#ifndef RAMPSIM_ROUTING_HPP
#define RAMPSIM_ROUTING_HPP

#include <vector>

namespace rampsim {

// R[i][j]: fraction of vehicles entering at on-ramp i whose destination is
// off-ramp j.  Rows must sum to one.  Ramps are indexed 0..m-1 in travel
// order around the ring; link j is the mainline section from on-ramp j to
// off-ramp j.
struct RoutingMatrix {
  std::vector<std::vector<double>> R;

  int size() const { return static_cast<int>(R.size()); }
  void validate() const;
};

// Rt[i][j]: fraction of vehicles entering at on-ramp i that travel through
// link j.  A trip from on-ramp i to off-ramp d covers links i, i+1, ..., d
// in cyclic order, so Rt[i][j] accumulates every destination at or beyond j.
// Rt[i][i] == 1 always.
struct CumulativeRouting {
  std::vector<std::vector<double>> Rt;

  int size() const { return static_cast<int>(Rt.size()); }
};

CumulativeRouting cumulative_routing(const RoutingMatrix& R);

// Load on each link per release period: rho_j = sum_i lambda_i * Rt[i][j].
std::vector<double> link_loads(const std::vector<double>& lambda,
                               const CumulativeRouting& Rt);

}  // namespace rampsim

#endif
