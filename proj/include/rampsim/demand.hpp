#ifndef RAMPSIM_DEMAND_HPP
#define RAMPSIM_DEMAND_HPP

#include <cstdint>
#include <vector>

#include "rampsim/rng.hpp"
#include "rampsim/routing.hpp"

namespace rampsim {

// Bernoulli arrival demand: at each release period, ramp i receives a new
// vehicle with probability lambda[i], independently across ramps and steps.
struct DemandSpec {
  std::vector<double> lambda;
  std::uint64_t seed = 1;
  long horizon_steps = 10000;

  void validate(int m) const;
};

struct Arrival {
  int origin = 0;
  int destination = 0;
};

// Stateful sampler: one arrival stream and one destination stream per ramp,
// all derived from the run seed so traces replay exactly.
class ArrivalSampler {
 public:
  ArrivalSampler(const DemandSpec& demand, const RoutingMatrix& routing);

  // arrivals occurring at one release instant; at most one per ramp
  std::vector<Arrival> sample_step();

 private:
  std::vector<double> lambda_;
  std::vector<std::vector<double>> rows_;
  std::vector<RngStream> arrival_streams_;
  std::vector<RngStream> destination_streams_;
};

}  // namespace rampsim

#endif
