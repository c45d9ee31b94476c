#include "rampsim/probe.hpp"

#include <fstream>
#include <future>
#include <span>
#include <stdexcept>

#include "rampsim/engine.hpp"
#include "rampsim/stats.hpp"

namespace rampsim {

namespace {

struct SeedVerdict {
  bool saturated = false;
  double slope = 0, ci_half = 0;
};

SeedVerdict classify_seed(Scenario sc, double lambda, std::uint64_t seed,
                          const ProbeConfig& cfg) {
  sc.lambda.assign(sc.lambda.size(), lambda);
  sc.seed = seed;
  sc.horizon = cfg.horizon;
  // classification only needs the queue series
  sc.metrics.vehicles = false;
  sc.metrics.comms = false;
  sc.metrics.ttc = false;
  sc.metrics.flow_points.clear();

  Engine eng(sc);
  bool blew_up = false;
  eng.run([&](const Engine& e) {
    blew_up = e.total_queue() > cfg.queue_blowup;
    return blew_up;
  });

  SeedVerdict out;
  const auto& q = eng.trace().total_queue;
  if (q.size() >= 4) {
    long len = static_cast<long>(q.size());
    std::span<const double> tail(q.data() + len / 2,
                                 static_cast<size_t>(len - len / 2));
    SlopeFit fit = regression_slope(tail, cfg.confidence);
    out.slope = fit.slope;
    out.ci_half = fit.half_width;
  }
  out.saturated = blew_up || saturated_by_slope(std::span<const double>(q),
                                                cfg.min_slope, cfg.confidence);
  return out;
}

}  // namespace

ProbePoint classify_lambda(const Scenario& base, double lambda,
                           const ProbeConfig& cfg) {
  ProbePoint pt;
  pt.lambda = lambda;
  pt.seeds = cfg.seeds;
  pt.horizon = cfg.horizon;

  std::vector<std::future<SeedVerdict>> jobs;
  for (int k = 0; k < cfg.seeds; ++k)
    jobs.push_back(std::async(std::launch::async, classify_seed, base, lambda,
                              base.seed + static_cast<std::uint64_t>(k), cfg));
  for (auto& j : jobs) {
    SeedVerdict v = j.get();
    if (v.saturated) ++pt.votes_saturated;
    pt.slope += v.slope / cfg.seeds;
    pt.slope_ci_half += v.ci_half / cfg.seeds;
  }
  pt.saturated = 2 * pt.votes_saturated > cfg.seeds;
  return pt;
}

ProbeResult saturation_probe(const Scenario& base, double lo, double hi,
                             const ProbeConfig& cfg) {
  if (!(lo < hi)) throw std::invalid_argument("probe range must satisfy lo < hi");
  ProbeResult res;
  res.lo = lo;
  res.hi = hi;

  if (cfg.check_endpoints) {
    ProbePoint a = classify_lambda(base, lo, cfg);
    ProbePoint b = classify_lambda(base, hi, cfg);
    res.points.push_back(a);
    res.points.push_back(b);
    if (a.saturated || !b.saturated) return res;  // range does not bracket
  }

  for (int it = 0; it < cfg.max_iters && res.hi - res.lo > cfg.tol; ++it) {
    double mid = 0.5 * (res.lo + res.hi);
    ProbePoint pt = classify_lambda(base, mid, cfg);
    res.points.push_back(pt);
    (pt.saturated ? res.hi : res.lo) = mid;
  }
  res.ok = true;
  return res;
}

void write_probe_csv(const std::string& path, const ProbeResult& pr) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "kind,lambda,classification,votes_saturated,seeds,slope,slope_ci_half,horizon\n";
  for (const auto& p : pr.points)
    f << "point," << csv_num(p.lambda) << ','
      << (p.saturated ? "saturated" : "stable") << ',' << p.votes_saturated << ','
      << p.seeds << ',' << csv_num(p.slope) << ',' << csv_num(p.slope_ci_half)
      << ',' << p.horizon << "\n";
  f << "bracket_lo," << csv_num(pr.lo) << ",stable,,,,,\n";
  f << "bracket_hi," << csv_num(pr.hi) << ",saturated,,,,,\n";
}

}  // namespace rampsim
