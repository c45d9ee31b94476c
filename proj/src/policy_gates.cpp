#include <stdexcept>

#include "policy_impl.hpp"
#include "rampsim/policy.hpp"

namespace rampsim {

void CycleQuota::start(const std::vector<int>& queues, double t) {
  quota.assign(queues.size(), 0);
  done.assign(queues.size(), 0);
  for (size_t i = 0; i < queues.size(); ++i) quota[i] = queues[i];
  starts.push_back(t);
  active = true;
}

bool CycleQuota::exhausted() const {
  if (!active) return false;
  for (size_t i = 0; i < quota.size(); ++i)
    if (done[i] < quota[i]) return false;
  return true;
}

std::unique_ptr<MeterPolicy> make_policy(const PolicyConfig& cfg, const SlotSystem& sys) {
  const std::string& k = cfg.kind;
  if (k == "greedy") {
    PolicyConfig g = cfg;
    g.T_cyc = 1;
    return make_fixed_cycle_policy(g, sys);
  }
  if (k == "fcq") return make_fixed_cycle_policy(cfg, sys);
  if (k == "renewal") return make_renewal_policy(cfg, sys);
  if (k == "drr") return make_drr_policy(cfg, sys);
  if (k == "disdrr") return make_disdrr_policy(cfg, sys);
  if (k == "dsg") return make_space_gap_policy(cfg, sys);
  if (k == "alinea") return make_alinea_policy(cfg, sys, false);
  if (k == "safe-alinea") return make_alinea_policy(cfg, sys, true);
  throw std::invalid_argument("unknown policy kind: " + k);
}

}  // namespace rampsim
