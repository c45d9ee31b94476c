#ifndef RAMPSIM_POLICY_HPP
#define RAMPSIM_POLICY_HPP

#include <memory>
#include <string>
#include <vector>

#include "rampsim/geometry.hpp"
#include "rampsim/monitors.hpp"

namespace rampsim {

// Release conditions evaluated against the live road.  All checks are
// side-effect free; evidence comes from connected vehicles only.
class GateOracle {
 public:
  virtual ~GateOracle() = default;
  virtual double now() const = 0;
  // spacing behind the previous release, measured at the meter line
  virtual bool meter_spacing_ok(int ramp, double extra) const = 0;
  // predicted spacing around a release from now until it joins the lattice
  virtual bool merge_window_ok(int ramp, double extra, bool merge_instant_only) const = 0;
  virtual bool road_free_flow() const = 0;
  virtual double tracking_deviation_now() const = 0;
  virtual double spacing_deviation_now() const = 0;
};

struct GridContext {
  const GateOracle* gates = nullptr;
  std::vector<int> queue_len;
  double t = 0;
  long step = 0;
};

// Per-step communication ledger entry.  `state` counts periodic vehicle
// state reports, `burst` counts queue-size uploads at cycle boundaries.
struct CommSample {
  double state = 0, burst = 0;
  double total() const { return state + burst; }
};

struct CommInputs {
  int n_road = 0;        // vehicles on the mainline and acceleration lanes
  int n_merge_area = 0;  // vehicles inside any merge area
  long queue_sum = 0;
  bool monitor_ticked = false;
  bool cycle_started = false;
};

struct PolicyConfig {
  std::string kind = "greedy";  // greedy | fcq | renewal | drr | disdrr | dsg |
                                // alinea | safe-alinea
  int T_cyc = 1;   // release periods per quota cycle
  int T_per = 2;   // release periods per monitor publish
  double gamma1 = 50, theta2 = 10, theta0 = 0.1, beta = 1.01;
  double T_max = 100;
  double kappa1 = 0.01, kappa2 = 0.01;
  double K_r = 70;             // veh/h gained per occupancy percent of error
  double o_hat = 13.0;         // occupancy setpoint, percent
  double detector_period = 60; // seconds between rate updates
  double detector_len = 100;   // measured segment starting at the merge point
  double r0 = 900;             // initial metering rate, veh/h
  double penetration = 1.0;    // fraction of connected vehicles
};

// Shared quota bookkeeping: a cycle grants each ramp the queue length seen
// at its start; a ramp may release while its grant is unspent.
struct CycleQuota {
  std::vector<long> quota, done;
  std::vector<double> starts;
  bool active = false;

  void start(const std::vector<int>& queues, double t);
  bool exhausted() const;
  bool allows(int ramp) const {
    return active && done[static_cast<size_t>(ramp)] < quota[static_cast<size_t>(ramp)];
  }
  void count(int ramp) { ++done[static_cast<size_t>(ramp)]; }
};

class MeterPolicy {
 public:
  virtual ~MeterPolicy() = default;
  virtual std::string name() const = 0;
  // Called at every release instant; append each ramp that releases one
  // vehicle now.  The engine vetoes physically impossible spawns.
  virtual void decide(const GridContext& ctx, std::vector<int>& release) = 0;
  // Called every integrator sub-tick for rate-based policies.
  virtual void decide_continuous(const GridContext&, std::vector<int>&) {}
  virtual bool continuous() const { return false; }
  virtual void on_monitor(const MonitorSample&) {}
  virtual void on_released(int, double) {}
  virtual void on_detector(int, double) {}
  virtual double detector_period() const { return 0; }
  virtual CommSample comm_step(const CommInputs& in) const = 0;
  // Cycle start instants, when the policy defines cycles.
  virtual const std::vector<double>* cycle_starts() const { return nullptr; }
  // Current release hold-offs in seconds (empty when the policy has none).
  virtual std::vector<double> hold_offs() const { return {}; }
};

std::unique_ptr<MeterPolicy> make_policy(const PolicyConfig& cfg, const SlotSystem& sys);

}  // namespace rampsim

#endif
