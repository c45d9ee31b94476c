#include "policy_impl.hpp"

namespace rampsim {

namespace {

// Fixed-cycle quota metering: every T_cyc release periods each ramp is
// granted its current queue length; grants are spent one vehicle per period
// subject to the spacing and merge-window conditions.  T_cyc = 1 regrants
// every period, which is the greedy rule.
class FixedCyclePolicy : public MeterPolicy {
 public:
  FixedCyclePolicy(const PolicyConfig& cfg, const SlotSystem& sys)
      : cfg_(cfg), m_(sys.m()) {}

  std::string name() const override { return cfg_.T_cyc == 1 ? "greedy" : "fcq"; }

  void decide(const GridContext& ctx, std::vector<int>& release) override {
    if (ctx.step % cfg_.T_cyc == 0) cyc_.start(ctx.queue_len, ctx.t);
    for (int i = 0; i < m_; ++i) {
      if (!cyc_.allows(i) || ctx.queue_len[static_cast<size_t>(i)] == 0) continue;
      if (!ctx.gates->meter_spacing_ok(i, 0)) continue;
      if (!ctx.gates->merge_window_ok(i, 0, false)) continue;
      release.push_back(i);
    }
  }

  void on_released(int ramp, double) override { cyc_.count(ramp); }

  CommSample comm_step(const CommInputs& in) const override {
    CommSample c;
    c.state = in.n_merge_area;
    if (cfg_.T_cyc > 1 && in.cycle_started) c.burst = static_cast<double>(in.queue_sum);
    return c;
  }

  const std::vector<double>* cycle_starts() const override { return &cyc_.starts; }

 private:
  PolicyConfig cfg_;
  int m_;
  CycleQuota cyc_;
};

}  // namespace

std::unique_ptr<MeterPolicy> make_fixed_cycle_policy(const PolicyConfig& cfg,
                                                     const SlotSystem& sys) {
  return std::make_unique<FixedCyclePolicy>(cfg, sys);
}

}  // namespace rampsim
