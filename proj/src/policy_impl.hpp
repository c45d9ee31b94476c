#ifndef RAMPSIM_POLICY_IMPL_HPP
#define RAMPSIM_POLICY_IMPL_HPP

#include <memory>

#include "rampsim/policy.hpp"

namespace rampsim {

std::unique_ptr<MeterPolicy> make_fixed_cycle_policy(const PolicyConfig& cfg,
                                                     const SlotSystem& sys);
std::unique_ptr<MeterPolicy> make_renewal_policy(const PolicyConfig& cfg,
                                                 const SlotSystem& sys);
std::unique_ptr<MeterPolicy> make_drr_policy(const PolicyConfig& cfg,
                                             const SlotSystem& sys);
std::unique_ptr<MeterPolicy> make_disdrr_policy(const PolicyConfig& cfg,
                                                const SlotSystem& sys);
std::unique_ptr<MeterPolicy> make_space_gap_policy(const PolicyConfig& cfg,
                                                   const SlotSystem& sys);
std::unique_ptr<MeterPolicy> make_alinea_policy(const PolicyConfig& cfg,
                                                const SlotSystem& sys, bool safe);

}  // namespace rampsim

#endif
