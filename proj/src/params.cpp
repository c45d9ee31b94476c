#include "rampsim/params.hpp"

namespace rampsim {

void Params::validate() const {
  if (h <= 0 || S0 <= 0 || L <= 0 || Vf <= 0)
    throw std::invalid_argument("h, S0, L, Vf must be positive");
  if (a_min >= 0) throw std::invalid_argument("a_min must be negative");
  if (a_max <= 0 || J_max <= 0)
    throw std::invalid_argument("a_max and J_max must be positive");
  if (k_p <= 0 || k_v <= 0)
    throw std::invalid_argument("controller gains must be positive");
}

}  // namespace rampsim
