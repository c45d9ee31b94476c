#include "policy_impl.hpp"

namespace rampsim {

namespace {

// Dynamic space-gap metering: fixed-cycle quotas, but every spacing
// requirement in the release conditions is widened by
//   f = kappa1 * (tracking deviation) + kappa2 * (spacing deviation)
// evaluated on the instantaneous road state, so releases tighten while the
// road is disturbed and relax back to the plain quota rule as it recovers.
class SpaceGapPolicy : public MeterPolicy {
 public:
  SpaceGapPolicy(const PolicyConfig& cfg, const SlotSystem& sys)
      : cfg_(cfg), m_(sys.m()) {}

  std::string name() const override { return "dsg"; }

  void decide(const GridContext& ctx, std::vector<int>& release) override {
    if (ctx.step % cfg_.T_cyc == 0) cyc_.start(ctx.queue_len, ctx.t);
    double f = cfg_.kappa1 * ctx.gates->tracking_deviation_now() +
               cfg_.kappa2 * ctx.gates->spacing_deviation_now();
    last_extra_ = f;
    for (int i = 0; i < m_; ++i) {
      if (!cyc_.allows(i) || ctx.queue_len[static_cast<size_t>(i)] == 0) continue;
      if (!ctx.gates->meter_spacing_ok(i, f)) continue;
      if (!ctx.gates->merge_window_ok(i, f, false)) continue;
      release.push_back(i);
    }
  }

  void on_released(int ramp, double) override { cyc_.count(ramp); }

  CommSample comm_step(const CommInputs& in) const override {
    // the widening term needs road-wide deviations at every ramp each period
    CommSample c;
    c.state = static_cast<double>(m_) * in.n_road;
    if (cfg_.T_cyc > 1 && in.cycle_started) c.burst = static_cast<double>(in.queue_sum);
    return c;
  }

  const std::vector<double>* cycle_starts() const override { return &cyc_.starts; }
  double last_extra() const { return last_extra_; }

 private:
  PolicyConfig cfg_;
  int m_;
  CycleQuota cyc_;
  double last_extra_ = 0;
};

}  // namespace

std::unique_ptr<MeterPolicy> make_space_gap_policy(const PolicyConfig& cfg,
                                                   const SlotSystem& sys) {
  return std::make_unique<SpaceGapPolicy>(cfg, sys);
}

}  // namespace rampsim
