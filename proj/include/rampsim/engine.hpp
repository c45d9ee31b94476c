#ifndef RAMPSIM_ENGINE_HPP
#define RAMPSIM_ENGINE_HPP

#include <functional>
#include <memory>
#include <vector>

#include "rampsim/demand.hpp"
#include "rampsim/monitors.hpp"
#include "rampsim/policy.hpp"
#include "rampsim/rng.hpp"
#include "rampsim/scenario.hpp"
#include "rampsim/trace.hpp"
#include "rampsim/world.hpp"

namespace rampsim {

// Time stepper.  Arrivals, metering decisions and releases happen on the
// release grid; jerk-limited following, merges, exits and detectors run on
// the integrator sub-grid between consecutive grid instants.  The engine is
// also the release-condition oracle the policies query, evaluated against
// its own world state.
class Engine : public GateOracle {
 public:
  explicit Engine(const Scenario& sc);

  // one release period
  void step();
  // steps to the horizon; `stop`, when given, is polled after every step
  void run(const std::function<bool(const Engine&)>& stop = {});

  const World& world() const { return world_; }
  World& world() { return world_; }
  const Trace& trace() const { return trace_; }
  Trace take_trace();
  const SlotSystem& sys() const { return sys_; }
  const Scenario& scenario() const { return sc_; }
  MeterPolicy& policy() { return *policy_; }
  const MeterPolicy& policy() const { return *policy_; }
  long steps_done() const { return step_; }
  double time() const { return t_; }
  int substeps_per_period() const { return nsub_; }
  long total_queue() const;

  // GateOracle
  double now() const override { return t_; }
  bool meter_spacing_ok(int ramp, double extra) const override;
  bool merge_window_ok(int ramp, double extra, bool merge_instant_only) const override;
  bool road_free_flow() const override;
  double tracking_deviation_now() const override;
  double spacing_deviation_now() const override;

 private:
  // predicted merge-time constraint, refreshed by the prediction pass and
  // honored by the gap controller until it expires
  struct VirtualCon {
    double gap = 0, v_other = 0;
    long until = -1;  // last sub-tick index the forecast covers
  };

  void setup_initial();
  void ensure_slot(int slot);
  void do_arrivals();
  void grid_decisions();
  bool physical_spawn_ok(int ramp) const;
  void execute_releases(const std::vector<int>& release, double t);
  void predict_mergers(double t);
  void controller_pass(double t);
  void evaluate_vehicle(int s, double t);
  void integrate(double t, double dt);
  void process_exits(double t, double dt);
  void attempt_merges(double t, double dt);
  void sample_ttc(double t);
  void accumulate_detectors(double t_next, double dt);
  void count_flow_step();
  void fold_flow(int slot, double x_to);
  long crossings(double x0, double x1, double point) const;
  double min_insert_gap(double v_follow, double v_lead) const;
  int merge_area_count() const;
  void enter_safety(int s);
  void exit_safety(int s, double t);
  void mark_active(int s);
  void drop_slot(int s);

  Scenario sc_;
  SlotSystem sys_;
  World world_;
  std::unique_ptr<MeterPolicy> policy_;
  ArrivalSampler sampler_;
  RngStream pen_rng_, dest_rng_;
  MonitorBoard monitors_;
  Trace trace_;

  long step_ = 0;
  double t_ = 0;
  int nsub_ = 1;       // integrator sub-ticks per release period
  double hsub_ = 0;    // sub-tick duration, tau / nsub_
  long subtick_ = 0;   // global sub-tick counter
  long next_id_ = 0;
  double idle_until_ = 0;
  bool idle_done_ = true;
  int tper_steps_ = 2;
  size_t cycles_seen_ = 0;

  // per storage slot scratch, grown on demand
  std::vector<double> x_prev_;   // flow-count anchor (mainline odometer)
  std::vector<double> x_old_;    // position at sub-tick start
  std::vector<double> cmd_;      // commanded acceleration while regulating
  std::vector<long> checked_;    // last sub-tick the controller evaluated
  std::vector<char> in_active_;
  std::vector<VirtualCon> vcon_;
  std::vector<long> pred_until_;  // predicted-violation flag expiry
  std::vector<long> line_block_until_;  // lane front denied admission, expiry

  std::vector<int> active_;      // mainline slots needing controller checks
  std::vector<int> pred_slots_;  // slots touched by the last forecast pass
  std::vector<int> scratch_check_, merge_cand_, exit_cand_;

  std::vector<double> flow_points_;
  std::vector<long> flow_step_;   // per point, crossings inside this step

  // detector state (occupancy-feedback policies)
  double det_period_ = 0;
  double next_det_ = 0;
  std::vector<double> det_time_int_;

  CommInputs pending_comm_;
};

}  // namespace rampsim

#endif
