#include <algorithm>
#include <cmath>
#include <limits>

#include "policy_impl.hpp"

namespace rampsim {

namespace {

// Rate-throttled quota metering, centralized form.  A shared hold-off g
// grows whenever the road-wide discomfort forecast fails to improve by
// gamma1 per publish and shrinks by theta2 when it does; a ramp may release
// only after g seconds have passed since its own last release.
class DrrPolicy : public MeterPolicy {
 public:
  DrrPolicy(const PolicyConfig& cfg, const SlotSystem& sys)
      : cfg_(cfg), m_(sys.m()), theta_(cfg.theta0),
        last_release_(static_cast<size_t>(sys.m()),
                      -std::numeric_limits<double>::infinity()) {}

  std::string name() const override { return "drr"; }

  void on_monitor(const MonitorSample& s) override {
    if (!have_prev_) {
      prev_xf_ = s.xf();
      have_prev_ = true;
      return;
    }
    if (s.xf() <= std::max(prev_xf_ - cfg_.gamma1, 0.0)) {
      g_ = std::max(g_ - cfg_.theta2, 0.0);
    } else {
      theta_ *= cfg_.beta;
      g_ += theta_;
    }
    prev_xf_ = s.xf();
  }

  void decide(const GridContext& ctx, std::vector<int>& release) override {
    if (ctx.step % cfg_.T_cyc == 0) cyc_.start(ctx.queue_len, ctx.t);
    for (int i = 0; i < m_; ++i) {
      if (!cyc_.allows(i) || ctx.queue_len[static_cast<size_t>(i)] == 0) continue;
      if (ctx.t - last_release_[static_cast<size_t>(i)] < g_ - 1e-9) continue;
      if (!ctx.gates->meter_spacing_ok(i, 0)) continue;
      if (!ctx.gates->merge_window_ok(i, 0, false)) continue;
      release.push_back(i);
    }
  }

  void on_released(int ramp, double t) override {
    cyc_.count(ramp);
    last_release_[static_cast<size_t>(ramp)] = t;
  }

  CommSample comm_step(const CommInputs& in) const override {
    CommSample c;
    c.state = in.n_merge_area;
    if (in.monitor_ticked) c.state += static_cast<double>(m_) * in.n_road;
    if (in.cycle_started) c.burst = static_cast<double>(in.queue_sum);
    return c;
  }

  const std::vector<double>* cycle_starts() const override { return &cyc_.starts; }

  std::vector<double> hold_offs() const override {
    return std::vector<double>(static_cast<size_t>(m_), g_);
  }

 private:
  PolicyConfig cfg_;
  int m_;
  CycleQuota cyc_;
  double g_ = 0, theta_, prev_xf_ = 0;
  bool have_prev_ = false;
  std::vector<double> last_release_;
};

// Per-ramp form: ramp i maintains its own hold-off from its link's share of
// the forecast.  When the link improves, the hold-off relaxes only if the
// next ramp downstream is not saturated (its hold-off or the downstream
// aggregate vouches for it); otherwise it escalates like a failure.  On a
// ring every link is downstream of every ramp, so the aggregate is the full
// road sum.
class DisDrrPolicy : public MeterPolicy {
 public:
  DisDrrPolicy(const PolicyConfig& cfg, const SlotSystem& sys)
      : cfg_(cfg), m_(sys.m()), ring_(sys.shape == Geometry::Shape::ring),
        g_(static_cast<size_t>(m_), 0.0),
        theta_(static_cast<size_t>(m_), cfg.theta0),
        last_release_(static_cast<size_t>(m_),
                      -std::numeric_limits<double>::infinity()) {}

  std::string name() const override { return "disdrr"; }

  void on_monitor(const MonitorSample& s) override {
    if (ticks_ < 2) {
      push_history(s.xf_link);
      ++ticks_;
      return;
    }
    std::vector<double> g_next = g_, th_next = theta_;
    for (int i = 0; i < m_; ++i) {
      size_t ui = static_cast<size_t>(i);
      double cur = s.xf_link[ui];
      double prev = hist1_[ui], prev2 = hist2_[ui];
      if (cur <= std::max(prev - cfg_.gamma1, 0.0)) {
        double g_down = ring_ ? g_[static_cast<size_t>((i + 1) % m_)]
                              : (i + 1 < m_ ? g_[ui + 1] : 0.0);
        bool downstream_ok = g_down <= cfg_.T_max ||
                             downstream_sum(s.xf_link, i) <=
                                 std::max(downstream_sum(hist1_, i) - cfg_.gamma1, 0.0);
        if (!downstream_ok) ++escalations_;
        if (downstream_ok) {
          g_next[ui] = std::max(g_[ui] - cfg_.theta2, 0.0);
        } else {
          th_next[ui] = theta_[ui] * cfg_.beta;
          g_next[ui] = g_[ui] + th_next[ui];
        }
      } else {
        if (prev <= std::max(prev2 - cfg_.gamma1, 0.0)) th_next[ui] = theta_[ui] * cfg_.beta;
        g_next[ui] = g_[ui] + th_next[ui];
      }
    }
    g_ = g_next;
    theta_ = th_next;
    push_history(s.xf_link);
    ++ticks_;
  }

  void decide(const GridContext& ctx, std::vector<int>& release) override {
    if (ctx.step % cfg_.T_cyc == 0) cyc_.start(ctx.queue_len, ctx.t);
    for (int i = 0; i < m_; ++i) {
      size_t ui = static_cast<size_t>(i);
      if (!cyc_.allows(i) || ctx.queue_len[ui] == 0) continue;
      if (ctx.t - last_release_[ui] < g_[ui] - 1e-9) continue;
      if (!ctx.gates->meter_spacing_ok(i, 0)) continue;
      if (!ctx.gates->merge_window_ok(i, 0, false)) continue;
      release.push_back(i);
    }
  }

  void on_released(int ramp, double t) override {
    cyc_.count(ramp);
    last_release_[static_cast<size_t>(ramp)] = t;
  }

  CommSample comm_step(const CommInputs& in) const override {
    CommSample c;
    c.state = in.n_merge_area;
    if (in.monitor_ticked) {
      // one link report per vehicle, one hold-off exchange per ramp pair,
      // plus aggregate requests where a neighbor looked saturated
      c.state += in.n_road + m_;
      c.state += static_cast<double>(escalations_) * (m_ - 1);
      escalations_ = 0;
    }
    if (in.cycle_started) c.burst = static_cast<double>(in.queue_sum);
    return c;
  }

  const std::vector<double>* cycle_starts() const override { return &cyc_.starts; }

  std::vector<double> hold_offs() const override { return g_; }

 private:
  double downstream_sum(const std::vector<double>& xf, int ramp) const {
    double sum = 0;
    if (ring_) {
      for (double v : xf) sum += v;
    } else {
      for (size_t j = static_cast<size_t>(ramp) + 1; j < xf.size(); ++j) sum += xf[j];
    }
    return sum;
  }

  void push_history(const std::vector<double>& xf) {
    hist2_ = hist1_.empty() ? xf : hist1_;
    hist1_ = xf;
  }

  PolicyConfig cfg_;
  int m_;
  bool ring_;
  CycleQuota cyc_;
  std::vector<double> g_, theta_;
  std::vector<double> hist1_, hist2_;
  std::vector<double> last_release_;
  int ticks_ = 0;
  mutable long escalations_ = 0;
};

}  // namespace

std::unique_ptr<MeterPolicy> make_drr_policy(const PolicyConfig& cfg,
                                             const SlotSystem& sys) {
  return std::make_unique<DrrPolicy>(cfg, sys);
}

std::unique_ptr<MeterPolicy> make_disdrr_policy(const PolicyConfig& cfg,
                                                const SlotSystem& sys) {
  return std::make_unique<DisDrrPolicy>(cfg, sys);
}

}  // namespace rampsim
