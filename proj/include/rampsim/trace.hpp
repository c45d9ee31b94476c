#ifndef RAMPSIM_TRACE_HPP
#define RAMPSIM_TRACE_HPP

#include <string>
#include <vector>

#include "rampsim/monitors.hpp"
#include "rampsim/policy.hpp"

namespace rampsim {

struct VehicleRecord {
  long id = -1;
  int origin = -1, destination = -1;
  bool connected = true;
  double t_arrival = -1, t_release = -1, t_merge = -1, t_exit = -1;
};

struct TtcRow {
  double t = 0;
  long follower = -1, leader = -1;
  double ttc = 0;
};

// Everything a run leaves behind, in memory.  CSV writers serialize the
// channels that were enabled; analysis modules consume the struct directly.
struct Trace {
  int m = 0;
  double tau = 0;
  long horizon = 0;

  std::vector<std::vector<int>> queues;  // [step][ramp]
  std::vector<double> total_queue;       // [step]
  std::vector<double> flow_point_arc;
  std::vector<std::vector<long>> flow;   // [point][step] crossings
  std::vector<CommSample> comms;         // [step]
  std::vector<MonitorSample> monitor;
  std::vector<VehicleRecord> vehicles;   // completion order
  long completed = 0;
  std::vector<TtcRow> ttc;
  std::vector<double> cycle_starts;
  long release_count = 0;
  long blocked_spawns = 0;  // physically vetoed release attempts
  long held_merges = 0;     // vehicles stopped at the merge line for lack of gap
};

// Stable text form for doubles so identical runs byte-match.
std::string csv_num(double v);

void write_queues_csv(const std::string& path, const Trace& tr);
void write_vehicles_csv(const std::string& path, const Trace& tr);
void write_flow_csv(const std::string& path, const Trace& tr);
void write_ttc_csv(const std::string& path, const Trace& tr);
void write_comms_csv(const std::string& path, const Trace& tr, const std::string& policy);
void write_monitor_csv(const std::string& path, const Trace& tr);

}  // namespace rampsim

#endif
