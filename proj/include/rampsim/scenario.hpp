#ifndef RAMPSIM_SCENARIO_HPP
#define RAMPSIM_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rampsim/geometry.hpp"
#include "rampsim/policy.hpp"
#include "rampsim/routing.hpp"

namespace rampsim {

struct InitialConfig {
  std::string kind = "empty";  // empty | free-flow-slots | congested
  int n = 0;
  double v0 = 6.7;
  double gap = 14.05;
  // arrivals and exits are suppressed until this many seconds have passed
  double idle_seconds = 0;
};

struct MetricsConfig {
  bool vehicles = true;
  bool comms = true;
  bool ttc = false;
  int ttc_ramp = -1;        // -1: sample near every merge point
  double ttc_radius = 100;  // meters around the merge point
  int ttc_stride = 4;       // sub-ticks between samples
  double ttc_discard_above = 20;
  std::vector<double> flow_points;  // arcs; empty: 50 m past each merge
  int ttt_n = 500;                  // completions averaged for travel time
};

struct Scenario {
  std::string name = "custom";
  Geometry geometry;
  Params params;
  RoutingMatrix routing;
  std::vector<double> lambda;  // arrival probability per ramp per period
  long horizon = 10000;
  std::uint64_t seed = 1;
  double dt = 0.05;  // integrator sub-step ceiling; tau/ceil(tau/dt) is used
  PolicyConfig policy;
  InitialConfig initial;
  MetricsConfig metrics;

  void validate() const;
};

std::string scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario_file(const std::string& path);
void save_scenario_file(const std::string& path, const Scenario& sc);

// Named experiment setups.  Throws std::invalid_argument for unknown names.
Scenario make_preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace rampsim

#endif
