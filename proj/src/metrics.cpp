#include "rampsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <span>
#include <stdexcept>

namespace rampsim {

TravelTimeStat travel_time_minutes(const Trace& tr, int n) {
  TravelTimeStat out;
  out.requested = n;
  double sum = 0;
  for (const auto& v : tr.vehicles) {
    if (v.origin < 0 || v.t_exit < 0 || v.t_arrival < 0) continue;
    sum += v.t_exit - v.t_arrival;
    if (++out.used == n) break;
  }
  if (out.used > 0) out.minutes = sum / out.used / 60.0;
  out.partial = out.used < n;
  return out;
}

double queue_time_average(const Trace& tr) {
  if (tr.total_queue.empty() || tr.m <= 0) return 0;
  double s = std::accumulate(tr.total_queue.begin(), tr.total_queue.end(), 0.0);
  return s / static_cast<double>(tr.total_queue.size()) / tr.m;
}

std::vector<FlowStat> flow_stats(const Trace& tr, long warmup_steps) {
  std::vector<FlowStat> out;
  for (size_t p = 0; p < tr.flow.size(); ++p) {
    FlowStat fs;
    fs.arc = tr.flow_point_arc[p];
    const auto& series = tr.flow[p];
    size_t from = static_cast<size_t>(
        std::clamp<long>(warmup_steps, 0, static_cast<long>(series.size())));
    size_t count = series.size() - from;
    if (count > 0) {
      long total = std::accumulate(series.begin() + static_cast<long>(from),
                                   series.end(), 0L);
      fs.veh_per_period = static_cast<double>(total) / static_cast<double>(count);
    }
    fs.drop = 1.0 - fs.veh_per_period;
    out.push_back(fs);
  }
  return out;
}

namespace {

// interpolated quantile of a sorted sample
double quantile_sorted(const std::vector<double>& v, double q) {
  if (v.empty()) return 0;
  double pos = q * static_cast<double>(v.size() - 1);
  size_t lo = static_cast<size_t>(pos);
  size_t hi = std::min(lo + 1, v.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return v[lo] * (1 - frac) + v[hi] * frac;
}

}  // namespace

TtcStat ttc_stats(const Trace& tr, double unsafe_threshold) {
  TtcStat out;
  std::vector<double> vals;
  vals.reserve(tr.ttc.size());
  long unsafe = 0;
  for (const auto& r : tr.ttc) {
    vals.push_back(r.ttc);
    if (r.ttc < unsafe_threshold) ++unsafe;
  }
  out.n = static_cast<long>(vals.size());
  if (vals.empty()) return out;
  std::sort(vals.begin(), vals.end());
  out.min = vals.front();
  out.q1 = quantile_sorted(vals, 0.25);
  out.median = quantile_sorted(vals, 0.5);
  out.q3 = quantile_sorted(vals, 0.75);
  out.below_frac = static_cast<double>(unsafe) / static_cast<double>(out.n);
  return out;
}

CommStat comm_stats(const Trace& tr) {
  CommStat out;
  if (tr.comms.empty()) return out;
  for (const auto& c : tr.comms) {
    out.state_per_step += c.state;
    out.burst_per_step += c.burst;
  }
  out.state_per_step /= static_cast<double>(tr.comms.size());
  out.burst_per_step /= static_cast<double>(tr.comms.size());
  out.total_per_step = out.state_per_step + out.burst_per_step;
  return out;
}

RunSummary summarize(const Trace& tr, const Scenario& sc,
                     const AnalysisConfig& cfg) {
  RunSummary out;
  out.name = sc.name;
  out.policy = sc.policy.kind;
  out.seed = sc.seed;
  out.horizon = tr.horizon;
  out.completed = tr.completed;

  out.ttt = travel_time_minutes(tr, sc.metrics.ttt_n);
  out.avg_queue = queue_time_average(tr);
  if (!tr.total_queue.empty())
    out.max_total_queue =
        *std::max_element(tr.total_queue.begin(), tr.total_queue.end());

  long len = static_cast<long>(tr.total_queue.size());
  long warm = std::min(cfg.warmup, len / 5);
  long batch = std::min(cfg.batch_len, std::max<long>(1, (len - warm) / 4));
  out.queue_bm =
      batch_means(std::span<const double>(tr.total_queue), warm, batch, cfg.confidence);
  out.saturated = saturated_by_slope(std::span<const double>(tr.total_queue),
                                     cfg.min_slope, cfg.confidence);
  if (len >= 4) {
    std::span<const double> tail(tr.total_queue.data() + len / 2,
                                 static_cast<size_t>(len - len / 2));
    out.tail_slope = regression_slope(tail, cfg.confidence);
  }

  out.release_count = tr.release_count;
  out.blocked_spawns = tr.blocked_spawns;
  out.held_merges = tr.held_merges;
  out.ttc = ttc_stats(tr, cfg.ttc_unsafe);
  out.comm = comm_stats(tr);
  out.flows = flow_stats(tr, warm);
  return out;
}

void write_summary_csv(const std::string& path,
                       const std::vector<RunSummary>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "name,policy,seed,horizon,completed,avg_travel_time_min,ttt_used,"
       "ttt_partial,avg_queue,max_total_queue,queue_mean,queue_ci_half,"
       "saturated,tail_slope,tail_slope_ci_half,releases,blocked_spawns,"
       "held_merges,ttc_n,ttc_min,ttc_q1,ttc_median,ttc_q3,ttc_unsafe_frac,"
       "comm_state_per_step,comm_burst_per_step,comm_total_per_step,"
       "flow_arc,flow_veh_per_period,capacity_drop\n";
  for (const auto& r : rows) {
    f << r.name << ',' << r.policy << ',' << r.seed << ',' << r.horizon << ','
      << r.completed << ',' << csv_num(r.ttt.minutes) << ',' << r.ttt.used << ','
      << (r.ttt.partial ? 1 : 0) << ',' << csv_num(r.avg_queue) << ','
      << csv_num(r.max_total_queue) << ',' << csv_num(r.queue_bm.mean) << ','
      << csv_num(r.queue_bm.half_width) << ',' << (r.saturated ? 1 : 0) << ','
      << csv_num(r.tail_slope.slope) << ',' << csv_num(r.tail_slope.half_width)
      << ',' << r.release_count << ',' << r.blocked_spawns << ','
      << r.held_merges << ',' << r.ttc.n << ',' << csv_num(r.ttc.min) << ','
      << csv_num(r.ttc.q1) << ',' << csv_num(r.ttc.median) << ','
      << csv_num(r.ttc.q3) << ',' << csv_num(r.ttc.below_frac) << ','
      << csv_num(r.comm.state_per_step) << ',' << csv_num(r.comm.burst_per_step)
      << ',' << csv_num(r.comm.total_per_step);
    if (r.flows.empty())
      f << ",,,";
    else
      f << ',' << csv_num(r.flows[0].arc) << ','
        << csv_num(r.flows[0].veh_per_period) << ',' << csv_num(r.flows[0].drop);
    f << "\n";
  }
}

}  // namespace rampsim
