#include "rampsim/demand.hpp"

#include <stdexcept>
#include <string>

namespace rampsim {

void DemandSpec::validate(int m) const {
  if (static_cast<int>(lambda.size()) != m)
    throw std::invalid_argument("lambda must have one entry per on-ramp");
  for (double l : lambda)
    if (l < 0.0 || l > 1.0)
      throw std::invalid_argument("arrival probabilities must lie in [0, 1]");
  if (horizon_steps <= 0) throw std::invalid_argument("horizon must be positive");
}

ArrivalSampler::ArrivalSampler(const DemandSpec& demand, const RoutingMatrix& routing)
    : lambda_(demand.lambda), rows_(routing.R) {
  demand.validate(routing.size());
  for (int i = 0; i < routing.size(); ++i) {
    arrival_streams_.emplace_back(demand.seed, "arrivals", static_cast<std::uint64_t>(i));
    destination_streams_.emplace_back(demand.seed, "destinations",
                                      static_cast<std::uint64_t>(i));
  }
}

std::vector<Arrival> ArrivalSampler::sample_step() {
  std::vector<Arrival> out;
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    if (arrival_streams_[i].bernoulli(lambda_[i])) {
      int dest = destination_streams_[i].categorical(rows_[i]);
      out.push_back({static_cast<int>(i), dest});
    }
  }
  return out;
}

}  // namespace rampsim
