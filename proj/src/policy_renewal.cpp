#include "policy_impl.hpp"

namespace rampsim {

namespace {

// Renewal metering: the first cycle opens once every vehicle already on the
// road is speed tracking; each later cycle opens at the first release
// instant after all grants are spent.  Grants are the queue lengths at the
// cycle-opening instant, arrivals of that instant included.
class RenewalPolicy : public MeterPolicy {
 public:
  RenewalPolicy(const PolicyConfig& cfg, const SlotSystem& sys)
      : cfg_(cfg), m_(sys.m()) {}

  std::string name() const override { return "renewal"; }

  void decide(const GridContext& ctx, std::vector<int>& release) override {
    if (!started_) {
      if (!ctx.gates->road_free_flow()) return;
      started_ = true;
      cyc_.start(ctx.queue_len, ctx.t);
    } else if (cyc_.exhausted()) {
      cyc_.start(ctx.queue_len, ctx.t);
    }
    for (int i = 0; i < m_; ++i) {
      if (!cyc_.allows(i) || ctx.queue_len[static_cast<size_t>(i)] == 0) continue;
      if (!ctx.gates->meter_spacing_ok(i, 0)) continue;
      if (!ctx.gates->merge_window_ok(i, 0, false)) continue;
      release.push_back(i);
    }
  }

  void on_released(int ramp, double) override { cyc_.count(ramp); }

  CommSample comm_step(const CommInputs& in) const override {
    // every on-road vehicle reports once per period so the coordinator can
    // detect the all-tracking condition and close the cycle
    CommSample c;
    c.state = in.n_road;
    if (in.cycle_started) c.burst = static_cast<double>(in.queue_sum);
    return c;
  }

  const std::vector<double>* cycle_starts() const override { return &cyc_.starts; }

 private:
  PolicyConfig cfg_;
  int m_;
  CycleQuota cyc_;
  bool started_ = false;
};

}  // namespace

std::unique_ptr<MeterPolicy> make_renewal_policy(const PolicyConfig& cfg,
                                                 const SlotSystem& sys) {
  return std::make_unique<RenewalPolicy>(cfg, sys);
}

}  // namespace rampsim
