#ifndef RAMPSIM_METRICS_HPP
#define RAMPSIM_METRICS_HPP

#include <string>
#include <vector>

#include "rampsim/scenario.hpp"
#include "rampsim/stats.hpp"
#include "rampsim/trace.hpp"

namespace rampsim {

// Knobs for post-run statistics.  Warmup and batch length are in release
// periods and shrink automatically when a run is shorter than the defaults.
struct AnalysisConfig {
  long warmup = 10000;
  long batch_len = 10000;
  double confidence = 0.95;
  double min_slope = 1e-3;   // veh/step growth that counts as saturation
  double ttc_unsafe = 6.0;   // seconds; below this a conflict is "unsafe"
};

struct TravelTimeStat {
  double minutes = 0;  // mean door-to-door time of the counted trips
  int used = 0;
  int requested = 0;
  bool partial = false;  // fewer completions than requested
};

// Mean (exit - arrival) over the first `n` completed trips that entered
// through a ramp.  Vehicles seeded on the mainline have no arrival event
// and are skipped.
TravelTimeStat travel_time_minutes(const Trace& tr, int n);

// Queue size averaged over every ramp and every release period.
double queue_time_average(const Trace& tr);

struct FlowStat {
  double arc = 0;
  double veh_per_period = 0;  // mean crossings per release period after warmup
  double drop = 0;            // 1 - veh_per_period; one slot per period is full use
};

std::vector<FlowStat> flow_stats(const Trace& tr, long warmup_steps);

struct TtcStat {
  long n = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0;
  double below_frac = 0;  // share of samples under the unsafe threshold
};

TtcStat ttc_stats(const Trace& tr, double unsafe_threshold);

struct CommStat {
  double state_per_step = 0, burst_per_step = 0, total_per_step = 0;
};

CommStat comm_stats(const Trace& tr);

// One row of an experiment table: everything a comparison or sweep needs
// from a finished run.
struct RunSummary {
  std::string name;    // scenario name
  std::string policy;  // policy kind
  std::uint64_t seed = 0;
  long horizon = 0;
  long completed = 0;

  TravelTimeStat ttt;
  double avg_queue = 0;        // per ramp per period
  double max_total_queue = 0;
  BatchMeansResult queue_bm;   // steady mean of the total queue
  bool saturated = false;
  SlopeFit tail_slope;         // trailing-half growth of the total queue

  long release_count = 0;
  long blocked_spawns = 0;
  long held_merges = 0;

  TtcStat ttc;
  CommStat comm;
  std::vector<FlowStat> flows;
};

RunSummary summarize(const Trace& tr, const Scenario& sc,
                     const AnalysisConfig& cfg = {});

// Tabular form; one row per summary, header always present.  Only the
// first flow point appears here, the full series lives in flow.csv.
void write_summary_csv(const std::string& path,
                       const std::vector<RunSummary>& rows);

}  // namespace rampsim

#endif
