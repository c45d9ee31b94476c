#include "rampsim/drift.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rampsim/engine.hpp"
#include "rampsim/stats.hpp"

namespace rampsim {

DriftReport drift_report(std::vector<DriftSample> samples, int buckets,
                         double confidence) {
  DriftReport rep;
  rep.epochs = static_cast<long>(samples.size());
  if (samples.empty() || buckets < 1) return rep;
  std::sort(samples.begin(), samples.end(),
            [](const DriftSample& a, const DriftSample& b) { return a.key < b.key; });

  size_t n = samples.size();
  size_t nb = std::min<size_t>(static_cast<size_t>(buckets), n);
  for (size_t b = 0; b < nb; ++b) {
    size_t from = b * n / nb, to = (b + 1) * n / nb;
    DriftBucket bk;
    bk.key_lo = samples[from].key;
    bk.key_hi = samples[to - 1].key;
    bk.n = static_cast<long>(to - from);
    double sum = 0;
    for (size_t i = from; i < to; ++i) sum += samples[i].v_next - samples[i].v_now;
    bk.mean_delta = sum / static_cast<double>(bk.n);
    if (bk.n > 1) {
      double ss = 0;
      for (size_t i = from; i < to; ++i) {
        double d = samples[i].v_next - samples[i].v_now - bk.mean_delta;
        ss += d * d;
      }
      double se = std::sqrt(ss / static_cast<double>(bk.n - 1) /
                            static_cast<double>(bk.n));
      bk.ci_half = t_quantile(0.5 + confidence / 2, static_cast<int>(bk.n - 1)) * se;
    }
    rep.buckets.push_back(bk);
  }

  const DriftBucket& top = rep.buckets.back();
  rep.tail_drift = top.mean_delta;
  rep.tail_ci_half = top.ci_half;
  rep.tail_negative = top.mean_delta + top.ci_half < 0;
  rep.tail_positive = top.mean_delta - top.ci_half > 0;
  rep.b_est = std::max(0.0, rep.buckets.front().mean_delta + rep.buckets.front().ci_half);
  return rep;
}

DriftReport renewal_cycle_drift(const Scenario& sc_in, long min_epochs,
                                long max_steps) {
  Scenario sc = sc_in;
  sc.horizon = max_steps;
  sc.metrics.vehicles = false;
  sc.metrics.comms = false;
  sc.metrics.ttc = false;
  sc.metrics.flow_points.clear();

  Engine eng(sc);
  if (!eng.policy().cycle_starts())
    throw std::invalid_argument("policy has no cycle structure: " + sc.policy.kind);
  // need min_epochs transitions of the cycle-length chain, so two more starts
  size_t need = static_cast<size_t>(min_epochs) + 2;
  eng.run([&](const Engine& e) {
    return e.policy().cycle_starts()->size() >= need;
  });

  const std::vector<double>& starts = *eng.policy().cycle_starts();
  double tau = eng.sys().tau;
  std::vector<DriftSample> samples;
  for (size_t k = 0; k + 2 < starts.size(); ++k) {
    double len0 = (starts[k + 1] - starts[k]) / tau;
    double len1 = (starts[k + 2] - starts[k + 1]) / tau;
    DriftSample s;
    s.key = len0;
    s.v_now = len0 * len0;
    s.v_next = len1 * len1;
    samples.push_back(s);
  }
  return drift_report(std::move(samples));
}

DriftReport queue_norm_drift(const Scenario& sc_in, long steps) {
  Scenario sc = sc_in;
  sc.horizon = steps;
  sc.metrics.vehicles = false;
  sc.metrics.comms = false;
  sc.metrics.ttc = false;
  sc.metrics.flow_points.clear();

  Engine eng(sc);
  eng.run();

  const auto& q = eng.trace().queues;
  std::vector<DriftSample> samples;
  for (size_t t = 0; t + 1 < q.size(); ++t) {
    double now = q[t].empty() ? 0 : *std::max_element(q[t].begin(), q[t].end());
    double next =
        q[t + 1].empty() ? 0 : *std::max_element(q[t + 1].begin(), q[t + 1].end());
    DriftSample s;
    s.key = now;
    s.v_now = now;
    s.v_next = next;
    samples.push_back(s);
  }
  return drift_report(std::move(samples));
}

}  // namespace rampsim
