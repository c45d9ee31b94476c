#include <algorithm>

#include "policy_impl.hpp"

namespace rampsim {

namespace {

// Occupancy-feedback metering: a roadside detector just downstream of each
// merge point drives the classic integral rate update
//   r <- r + K_r * (o_hat - o)
// once per detector period; releases are spaced 3600/r seconds apart and are
// not tied to the release grid.  The safe variant additionally requires the
// merge-instant spacing check to pass, retrying until it does.
class AlineaPolicy : public MeterPolicy {
 public:
  AlineaPolicy(const PolicyConfig& cfg, const SlotSystem& sys, bool safe)
      : cfg_(cfg), m_(sys.m()), safe_(safe),
        rate_max_(3600.0 / sys.tau),
        rate_(static_cast<size_t>(sys.m()), std::min(cfg.r0, 3600.0 / sys.tau)),
        t_next_(static_cast<size_t>(sys.m()), 0.0) {}

  std::string name() const override { return safe_ ? "safe-alinea" : "alinea"; }

  bool continuous() const override { return true; }
  double detector_period() const override { return cfg_.detector_period; }

  void decide(const GridContext&, std::vector<int>&) override {}

  void decide_continuous(const GridContext& ctx, std::vector<int>& release) override {
    for (int i = 0; i < m_; ++i) {
      size_t ui = static_cast<size_t>(i);
      if (ctx.queue_len[ui] == 0) continue;
      if (rate_[ui] <= 1e-9) continue;
      if (ctx.t + 1e-9 < t_next_[ui]) continue;
      if (safe_ && !ctx.gates->merge_window_ok(i, 0, true)) continue;
      release.push_back(i);
    }
  }

  void on_released(int ramp, double t) override {
    size_t ui = static_cast<size_t>(ramp);
    t_next_[ui] = t + 3600.0 / std::max(rate_[ui], 1e-9);
  }

  void on_detector(int ramp, double occupancy_pct) override {
    size_t ui = static_cast<size_t>(ramp);
    rate_[ui] = std::clamp(rate_[ui] + cfg_.K_r * (cfg_.o_hat - occupancy_pct), 0.0,
                           rate_max_);
  }

  CommSample comm_step(const CommInputs& in) const override {
    // the detector is roadside hardware; only the safe variant listens to
    // merge-area vehicles
    CommSample c;
    if (safe_) c.state = in.n_merge_area;
    return c;
  }

  std::vector<double> hold_offs() const override {
    std::vector<double> out(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i)
      out[static_cast<size_t>(i)] = 3600.0 / std::max(rate_[static_cast<size_t>(i)], 1e-9);
    return out;
  }

 private:
  PolicyConfig cfg_;
  int m_;
  bool safe_;
  double rate_max_;
  std::vector<double> rate_;
  std::vector<double> t_next_;
};

}  // namespace

std::unique_ptr<MeterPolicy> make_alinea_policy(const PolicyConfig& cfg,
                                                const SlotSystem& sys, bool safe) {
  return std::make_unique<AlineaPolicy>(cfg, sys, safe);
}

}  // namespace rampsim
