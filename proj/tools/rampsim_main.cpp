// Command line front end: configure runs, fan out replications, and emit
// CSV artifacts for external plotting.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rampsim/controller.hpp"
#include "rampsim/engine.hpp"
#include "rampsim/metrics.hpp"
#include "rampsim/probe.hpp"
#include "rampsim/regions.hpp"
#include "rampsim/scenario.hpp"
#include "rampsim/trace.hpp"

namespace fs = std::filesystem;
using namespace rampsim;

namespace {

// ---------------------------------------------------------- plumbing ---

fs::path resolve_out(const std::string& flag) {
  std::string dir = flag;
  if (const char* env = std::getenv("RAMPSIM_OUT"); env && *env) dir = env;
  fs::path p = dir.empty() ? fs::path("out") : fs::path(dir);
  fs::create_directories(p);
  return p;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + p.string());
  return f;
}

// Run jobs on a small pool; the first exception wins and is rethrown.
void parallel_run(std::vector<std::function<void()>>& jobs, int threads) {
  if (threads <= 0)
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(jobs.size()));
  std::atomic<size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      try {
        jobs[i]();
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
}

// Shared run selection flags; every subcommand takes the same base set.
struct CommonFlags {
  std::string preset;
  std::string scenario_file;
  std::string out;
  std::uint64_t seed = 0;
  long horizon = -1;
  int threads = 0;
};

void add_common(CLI::App* sub, CommonFlags& cf, const std::string& default_preset) {
  cf.preset = default_preset;
  sub->add_option("--preset", cf.preset,
                  "named setup: " + [] {
                    std::string s;
                    for (const auto& n : preset_names()) s += (s.empty() ? "" : ", ") + n;
                    return s;
                  }());
  sub->add_option("--scenario", cf.scenario_file,
                  "scenario JSON file (overrides --preset)")
      ->check(CLI::ExistingFile);
  sub->add_option("--out", cf.out, "output directory (env RAMPSIM_OUT wins)");
  sub->add_option("--seed", cf.seed, "base RNG seed override");
  sub->add_option("--horizon", cf.horizon, "steps override (release periods)");
  sub->add_option("--threads", cf.threads, "worker threads, 0 = hardware");
}

Scenario resolve_scenario(const CLI::App* sub, const CommonFlags& cf) {
  Scenario sc = cf.scenario_file.empty() ? make_preset(cf.preset)
                                         : load_scenario_file(cf.scenario_file);
  if (sub->count("--seed")) sc.seed = cf.seed;
  if (sub->count("--horizon")) sc.horizon = cf.horizon;
  sc.validate();
  return sc;
}

// ---------------------------------------------------------- simulate ---

int cmd_simulate(const CLI::App* sub, const CommonFlags& cf) {
  Scenario sc = resolve_scenario(sub, cf);
  fs::path dir = resolve_out(cf.out);
  open_out(dir / "run_manifest.json") << scenario_to_json(sc) << "\n";
  std::cout << "manifest: " << (dir / "run_manifest.json").string() << "\n";
  if (sc.horizon == 0) return 0;

  Engine eng(sc);
  eng.run();
  Trace tr = eng.take_trace();

  write_queues_csv((dir / "queues.csv").string(), tr);
  std::cout << "queues:   " << (dir / "queues.csv").string() << "\n";
  if (sc.metrics.vehicles) {
    write_vehicles_csv((dir / "vehicles.csv").string(), tr);
    std::cout << "vehicles: " << (dir / "vehicles.csv").string() << "\n";
  }
  if (!tr.flow.empty()) {
    write_flow_csv((dir / "flow.csv").string(), tr);
    std::cout << "flow:     " << (dir / "flow.csv").string() << "\n";
  }
  if (sc.metrics.ttc) {
    write_ttc_csv((dir / "ttc.csv").string(), tr);
    std::cout << "ttc:      " << (dir / "ttc.csv").string() << "\n";
  }
  if (sc.metrics.comms) {
    write_comms_csv((dir / "comms.csv").string(), tr, sc.policy.kind);
    std::cout << "comms:    " << (dir / "comms.csv").string() << "\n";
  }
  if (!tr.monitor.empty()) {
    write_monitor_csv((dir / "monitor.csv").string(), tr);
    std::cout << "monitor:  " << (dir / "monitor.csv").string() << "\n";
  }

  RunSummary rs = summarize(tr, sc);
  write_summary_csv((dir / "summary.csv").string(), {rs});
  std::cout << "summary:  " << (dir / "summary.csv").string() << "\n";
  std::cout << sc.name << " policy=" << rs.policy << " steps=" << rs.horizon
            << " completed=" << rs.completed << " avg_queue=" << csv_num(rs.avg_queue)
            << " ttt_min=" << csv_num(rs.ttt.minutes)
            << (rs.saturated ? " [saturated]" : " [stable]") << "\n";
  return 0;
}

// ------------------------------------------------------------ region ---

RoutingMatrix load_routing_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read routing file: " + path);
  nlohmann::json j = nlohmann::json::parse(f);
  RoutingMatrix R;
  if (j.is_object() && j.contains("R"))
    R.R = j["R"].get<std::vector<std::vector<double>>>();
  else
    R.R = j.get<std::vector<std::vector<double>>>();
  R.validate();
  return R;
}

RoutingMatrix demo_routing() {
  RoutingMatrix R;
  R.R = {{0.2, 0.7, 0.1}, {0.0, 0.8, 0.2}, {0.5, 0.0, 0.5}};
  return R;
}

struct RegionFlags {
  std::string routing_file;
  std::vector<std::string> kinds{"renewal", "fixed-cycle", "outer"};
  std::vector<int> k;
  std::vector<double> merge_speeds;
  std::vector<std::string> fix;  // index=value, 1-based demand coordinates
  int samples = 101;
  std::string out;
};

int cmd_region(const RegionFlags& rf) {
  RoutingMatrix R = rf.routing_file.empty() ? demo_routing()
                                            : load_routing_file(rf.routing_file);
  CumulativeRouting Rt = cumulative_routing(R);
  int m = Rt.size();

  Params params;
  std::vector<int> k = rf.k;
  if (k.empty()) {
    k.assign(static_cast<size_t>(m), 2);
    for (size_t i = 0; i < rf.merge_speeds.size() && i < k.size(); ++i)
      k[i] = merge_headway_multiple(rf.merge_speeds[i], params);
  }
  if (static_cast<int>(k.size()) != m)
    throw std::invalid_argument("need one headway multiple per ramp");

  std::vector<std::optional<double>> fixed(static_cast<size_t>(m));
  for (const auto& s : rf.fix) {
    size_t eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--fix wants i=value");
    int idx = std::stoi(s.substr(0, eq));
    if (idx < 1 || idx > m) throw std::invalid_argument("--fix index out of range");
    fixed[static_cast<size_t>(idx - 1)] = std::stod(s.substr(eq + 1));
  }
  std::vector<int> free_idx;
  for (int i = 0; i < m; ++i)
    if (!fixed[static_cast<size_t>(i)]) free_idx.push_back(i + 1);

  fs::path dir = resolve_out(rf.out);
  auto f = open_out(dir / "region.csv");
  f << "kind,constraint,strict,b";
  for (int i : free_idx) f << ",a_lambda" << i;
  f << "\n";

  std::vector<std::pair<std::string, ThroughputRegion>> made;
  for (const auto& kind : rf.kinds) {
    ThroughputRegion reg;
    if (kind == "renewal")
      reg = inner_region_renewal(Rt, k);
    else if (kind == "fixed-cycle")
      reg = inner_region_fixed_cycle(Rt, k);
    else if (kind == "outer")
      reg = outer_region(Rt);
    else
      throw std::invalid_argument("unknown region kind: " + kind);
    reg = restrict_region(reg, fixed);
    for (size_t c = 0; c < reg.constraints.size(); ++c) {
      const auto& lc = reg.constraints[c];
      f << kind << ',' << c << ',' << (lc.strict ? 1 : 0) << ',' << csv_num(lc.b);
      for (double a : lc.a) f << ',' << csv_num(a);
      f << "\n";
    }
    made.emplace_back(kind, reg);
  }
  std::cout << "region:   " << (dir / "region.csv").string() << "\n";

  // with two free demands, trace the upper boundary for plotting
  if (free_idx.size() == 2 && rf.samples > 1) {
    auto bf = open_out(dir / "boundary.csv");
    bf << "kind,lambda" << free_idx[0] << ",lambda" << free_idx[1] << "\n";
    for (const auto& [kind, reg] : made) {
      for (int s = 0; s < rf.samples; ++s) {
        double x = static_cast<double>(s) / (rf.samples - 1);
        double y = 1.0;
        bool feasible = true;
        for (const auto& lc : reg.constraints) {
          double ax = lc.a[0], ay = lc.a[1];
          if (ay > 1e-15)
            y = std::min(y, (lc.b - ax * x) / ay);
          else if (ax * x > lc.b + 1e-15)
            feasible = false;
        }
        if (!feasible || y < 0) continue;
        bf << kind << ',' << csv_num(x) << ',' << csv_num(y) << "\n";
      }
    }
    std::cout << "boundary: " << (dir / "boundary.csv").string() << "\n";
  }
  return 0;
}

// ------------------------------------------------------------- sweep ---

// "name=1,5,9" or "name=1..25" or "name=1..25:4"
std::pair<std::string, std::vector<double>> parse_param(const std::string& spec) {
  size_t eq = spec.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("--param wants name=values");
  std::string name = spec.substr(0, eq), rest = spec.substr(eq + 1);
  std::vector<double> values;
  if (size_t dots = rest.find(".."); dots != std::string::npos) {
    double step = 1;
    std::string hi_part = rest.substr(dots + 2);
    if (size_t colon = hi_part.find(':'); colon != std::string::npos) {
      step = std::stod(hi_part.substr(colon + 1));
      hi_part = hi_part.substr(0, colon);
    }
    double lo = std::stod(rest.substr(0, dots)), hi = std::stod(hi_part);
    if (step <= 0) throw std::invalid_argument("--param step must be positive");
    for (double v = lo; v <= hi + 1e-9; v += step) values.push_back(v);
  } else {
    size_t pos = 0;
    while (pos < rest.size()) {
      size_t comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      values.push_back(std::stod(rest.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  }
  if (values.empty()) throw std::invalid_argument("--param has no values");
  return {name, values};
}

void apply_param(Scenario& sc, const std::string& name, double value) {
  if (name == "T_cyc")
    sc.policy.T_cyc = static_cast<int>(value);
  else if (name == "T_per")
    sc.policy.T_per = static_cast<int>(value);
  else if (name == "lambda")
    sc.lambda.assign(sc.lambda.size(), value);
  else if (name == "penetration")
    sc.policy.penetration = value;
  else
    throw std::invalid_argument("unknown sweep parameter: " + name);
}

struct SweepFlags {
  std::string param = "T_cyc=1,5,9,13,17,25";
  int replications = 3;
  double sentinel = 20;  // stands in for a diverging queue in log plots
};

int cmd_sweep(const CLI::App* sub, const CommonFlags& cf, const SweepFlags& sf) {
  Scenario base = resolve_scenario(sub, cf);
  auto [pname, values] = parse_param(sf.param);

  struct Slot {
    RunSummary rs;
  };
  std::vector<Slot> slots(values.size() * static_cast<size_t>(sf.replications));
  std::vector<std::function<void()>> jobs;
  for (size_t vi = 0; vi < values.size(); ++vi)
    for (int rep = 0; rep < sf.replications; ++rep) {
      size_t slot = vi * static_cast<size_t>(sf.replications) + static_cast<size_t>(rep);
      jobs.push_back([&, vi, rep, slot] {
        Scenario sc = base;
        apply_param(sc, pname, values[vi]);
        sc.seed = base.seed + static_cast<std::uint64_t>(rep);
        Engine eng(sc);
        eng.run();
        slots[slot].rs = summarize(eng.take_trace(), sc);
      });
    }
  parallel_run(jobs, cf.threads);

  fs::path dir = resolve_out(cf.out);
  std::vector<RunSummary> all;
  for (const auto& s : slots) all.push_back(s.rs);
  write_summary_csv((dir / "summary.csv").string(), all);

  auto f = open_out(dir / "sweep.csv");
  f << "param,value,replications,saturated_runs,queue_mean,queue_ci_half,"
       "queue_display,avg_travel_time_min\n";
  for (size_t vi = 0; vi < values.size(); ++vi) {
    int sat = 0;
    double qmean = 0, qci = 0, ttt = 0;
    for (int rep = 0; rep < sf.replications; ++rep) {
      const RunSummary& rs =
          slots[vi * static_cast<size_t>(sf.replications) + static_cast<size_t>(rep)].rs;
      if (rs.saturated) ++sat;
      qmean += rs.queue_bm.mean / sf.replications;
      qci += rs.queue_bm.half_width / sf.replications;
      ttt += rs.ttt.minutes / sf.replications;
    }
    bool saturated = 2 * sat > sf.replications;
    double display = saturated ? sf.sentinel : qmean;
    f << pname << ',' << csv_num(values[vi]) << ',' << sf.replications << ','
      << sat << ',' << csv_num(qmean) << ',' << csv_num(qci) << ','
      << csv_num(display) << ',' << csv_num(ttt) << "\n";
    std::cout << pname << "=" << csv_num(values[vi]) << " queue=" << csv_num(qmean)
              << (saturated ? " [saturated]" : "") << "\n";
  }
  std::cout << "sweep:    " << (dir / "sweep.csv").string() << "\n";
  return 0;
}

// ----------------------------------------------------------- compare ---

struct CompareFlags {
  std::vector<std::string> policies{"renewal",  "drr",    "disdrr", "dsg",
                                    "greedy", "safe-alinea", "alinea"};
  std::vector<double> penetrations{1.0};
  int seeds = 3;
  long flow_window = 500;  // steps per smoothed flow sample
};

int cmd_compare(const CLI::App* sub, const CommonFlags& cf, const CompareFlags& pf) {
  Scenario base = resolve_scenario(sub, cf);

  struct Slot {
    RunSummary rs;
    std::vector<double> ttc_values;
    // (point arc, window start, mean crossings per period)
    std::vector<std::tuple<double, long, double>> flow_windows;
  };
  size_t npol = pf.policies.size(), npen = pf.penetrations.size();
  size_t nseed = static_cast<size_t>(pf.seeds);
  std::vector<Slot> slots(npol * npen * nseed);
  std::vector<std::function<void()>> jobs;

  for (size_t pi = 0; pi < npol; ++pi)
    for (size_t ni = 0; ni < npen; ++ni)
      for (size_t si = 0; si < nseed; ++si) {
        size_t slot = (pi * npen + ni) * nseed + si;
        jobs.push_back([&, pi, ni, si, slot] {
          Scenario sc = base;
          sc.policy.kind = pf.policies[pi];
          sc.policy.penetration = pf.penetrations[ni];
          sc.seed = base.seed + static_cast<std::uint64_t>(si);
          Engine eng(sc);
          eng.run();
          Trace tr = eng.take_trace();
          Slot& out = slots[slot];
          out.rs = summarize(tr, sc);
          out.ttc_values.reserve(tr.ttc.size());
          for (const auto& r : tr.ttc) out.ttc_values.push_back(r.ttc);
          for (size_t p = 0; p < tr.flow.size(); ++p)
            for (size_t w0 = 0; w0 < tr.flow[p].size();
                 w0 += static_cast<size_t>(pf.flow_window)) {
              size_t w1 = std::min(tr.flow[p].size(),
                                   w0 + static_cast<size_t>(pf.flow_window));
              double sum = 0;
              for (size_t s = w0; s < w1; ++s) sum += tr.flow[p][s];
              out.flow_windows.emplace_back(tr.flow_point_arc[p],
                                            static_cast<long>(w0),
                                            sum / static_cast<double>(w1 - w0));
            }
        });
      }
  parallel_run(jobs, cf.threads);

  fs::path dir = resolve_out(cf.out);
  std::vector<RunSummary> all;
  for (const auto& s : slots) all.push_back(s.rs);
  write_summary_csv((dir / "summary.csv").string(), all);

  auto tf = open_out(dir / "table3.csv");
  tf << "policy,penetration,seeds,avg_travel_time_min,avg_queue,"
        "max_total_queue,saturated_runs,held_merges,ttc_unsafe_frac,"
        "comm_total_per_step\n";
  auto bf = open_out(dir / "ttc_box.csv");
  bf << "policy,penetration,n,min,q1,median,q3,below6_frac\n";
  auto ff = open_out(dir / "flow.csv");
  ff << "policy,penetration,seed,point,window_start,veh_per_period\n";

  for (size_t pi = 0; pi < npol; ++pi)
    for (size_t ni = 0; ni < npen; ++ni) {
      double ttt = 0, avq = 0, maxq = 0, held = 0, unsafe = 0, comm = 0;
      int sat = 0;
      std::vector<double> pooled;
      for (size_t si = 0; si < nseed; ++si) {
        const Slot& s = slots[(pi * npen + ni) * nseed + si];
        ttt += s.rs.ttt.minutes / static_cast<double>(nseed);
        avq += s.rs.avg_queue / static_cast<double>(nseed);
        maxq = std::max(maxq, s.rs.max_total_queue);
        held += static_cast<double>(s.rs.held_merges) / static_cast<double>(nseed);
        unsafe += s.rs.ttc.below_frac / static_cast<double>(nseed);
        comm += s.rs.comm.total_per_step / static_cast<double>(nseed);
        if (s.rs.saturated) ++sat;
        pooled.insert(pooled.end(), s.ttc_values.begin(), s.ttc_values.end());
        for (const auto& [arc, w0, mean] : s.flow_windows)
          ff << pf.policies[pi] << ',' << csv_num(pf.penetrations[ni]) << ','
             << s.rs.seed << ',' << csv_num(arc) << ',' << w0 << ','
             << csv_num(mean) << "\n";
      }
      tf << pf.policies[pi] << ',' << csv_num(pf.penetrations[ni]) << ','
         << nseed << ',' << csv_num(ttt) << ',' << csv_num(avq) << ','
         << csv_num(maxq) << ',' << sat << ',' << csv_num(held) << ','
         << csv_num(unsafe) << ',' << csv_num(comm) << "\n";

      Trace pooled_tr;
      pooled_tr.ttc.reserve(pooled.size());
      for (double v : pooled) pooled_tr.ttc.push_back(TtcRow{0, 0, 0, v});
      TtcStat ts = ttc_stats(pooled_tr, 6.0);
      bf << pf.policies[pi] << ',' << csv_num(pf.penetrations[ni]) << ','
         << ts.n << ',' << csv_num(ts.min) << ',' << csv_num(ts.q1) << ','
         << csv_num(ts.median) << ',' << csv_num(ts.q3) << ','
         << csv_num(ts.below_frac) << "\n";
      std::cout << pf.policies[pi] << " pen=" << csv_num(pf.penetrations[ni])
                << " ttt_min=" << csv_num(ttt) << " avg_queue=" << csv_num(avq)
                << " saturated=" << sat << "/" << nseed << "\n";
    }
  std::cout << "table3:   " << (dir / "table3.csv").string() << "\n"
            << "ttc_box:  " << (dir / "ttc_box.csv").string() << "\n"
            << "flow:     " << (dir / "flow.csv").string() << "\n";
  return 0;
}

// ------------------------------------------------------------- probe ---

struct ProbeFlags {
  double lo = 0.35, hi = 0.75;
  int seeds = 3;
  double tol = 0.04;
  double blowup = 2000;
};

int cmd_probe(const CLI::App* sub, const CommonFlags& cf, const ProbeFlags& bf) {
  Scenario base = resolve_scenario(sub, cf);
  ProbeConfig cfg;
  cfg.seeds = bf.seeds;
  cfg.tol = bf.tol;
  cfg.queue_blowup = bf.blowup;
  cfg.horizon = sub->count("--horizon") ? cf.horizon : base.horizon;
  ProbeResult res = saturation_probe(base, bf.lo, bf.hi, cfg);

  fs::path dir = resolve_out(cf.out);
  write_probe_csv((dir / "probe.csv").string(), res);
  std::cout << "probe:    " << (dir / "probe.csv").string() << "\n";
  if (!res.ok) {
    std::cerr << "range [" << bf.lo << ", " << bf.hi
              << "] does not bracket the boundary\n";
    return 1;
  }
  std::cout << "boundary in [" << csv_num(res.lo) << ", " << csv_num(res.hi)
            << "] width " << csv_num(res.hi - res.lo) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slot-based freeway simulator with coordinated ramp metering"};
  app.require_subcommand(1);

  CommonFlags sim_cf, sweep_cf, comp_cf, probe_cf;
  RegionFlags region_f;
  SweepFlags sweep_f;
  CompareFlags comp_f;
  ProbeFlags probe_f;

  CLI::App* sim = app.add_subcommand("simulate", "run one scenario, write traces");
  add_common(sim, sim_cf, "policy-compare");

  CLI::App* reg = app.add_subcommand("region", "analytical throughput regions");
  reg->add_option("--routing", region_f.routing_file,
                  "routing matrix JSON (rows = entry ramp)")
      ->check(CLI::ExistingFile);
  reg->add_option("--kind", region_f.kinds,
                  "renewal, fixed-cycle, outer (repeatable)")
      ->delimiter(',');
  reg->add_option("--k", region_f.k, "release headway multiples per ramp")
      ->delimiter(',');
  reg->add_option("--merge-speeds", region_f.merge_speeds,
                  "merge speeds m/s, mapped to headway multiples")
      ->delimiter(',');
  reg->add_option("--fix", region_f.fix, "pin demand i to a value, e.g. 3=0.5");
  reg->add_option("--samples", region_f.samples, "boundary sample count");
  reg->add_option("--out", region_f.out, "output directory (env RAMPSIM_OUT wins)");

  CLI::App* swp = app.add_subcommand("sweep", "replicate runs over a parameter grid");
  add_common(swp, sweep_cf, "sweep-tcyc");
  swp->add_option("--param", sweep_f.param, "grid, e.g. T_cyc=1,5,9 or T_cyc=1..25:4");
  swp->add_option("--replications", sweep_f.replications, "seeds per grid value");
  swp->add_option("--sentinel", sweep_f.sentinel, "queue value standing for divergence");

  CLI::App* cmp = app.add_subcommand("compare", "run a policy set on one scenario");
  add_common(cmp, comp_cf, "policy-compare");
  cmp->add_option("--policies", comp_f.policies, "policy kinds to compare")
      ->delimiter(',');
  cmp->add_option("--penetrations", comp_f.penetrations, "connected fractions")
      ->delimiter(',');
  cmp->add_option("--seeds", comp_f.seeds, "replications per cell");
  cmp->add_option("--flow-window", comp_f.flow_window, "steps per flow sample");

  CLI::App* prb = app.add_subcommand("probe", "bisect the saturation boundary");
  add_common(prb, probe_cf, "throughput-all-vf");
  prb->add_option("--lo", probe_f.lo, "known-stable demand");
  prb->add_option("--hi", probe_f.hi, "known-saturated demand");
  prb->add_option("--probe-seeds", probe_f.seeds, "replications per level");
  prb->add_option("--tol", probe_f.tol, "bracket width to stop at");
  prb->add_option("--blowup", probe_f.blowup, "queue size that ends a run early");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(sim, sim_cf);
    if (reg->parsed()) return cmd_region(region_f);
    if (swp->parsed()) return cmd_sweep(swp, sweep_cf, sweep_f);
    if (cmp->parsed()) return cmd_compare(cmp, comp_cf, comp_f);
    if (prb->parsed()) return cmd_probe(prb, probe_cf, probe_f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
