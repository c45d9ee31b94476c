#include "rampsim/engine.hpp"

#include <algorithm>
#include <cmath>

namespace rampsim {

namespace {
// sub-ticks between merge-forecast refreshes; forecasts stay valid in between
constexpr long kPredStride = 4;
constexpr double kEps = 1e-9;
}  // namespace

Engine::Engine(const Scenario& sc)
    : sc_(sc),
      sys_(build_slot_system(sc.geometry, sc.params)),
      world_(sys_),
      policy_(make_policy(sc.policy, sys_)),
      sampler_(DemandSpec{sc.lambda, sc.seed, sc.horizon}, sc.routing),
      pen_rng_(sc.seed, "penetration", 0),
      dest_rng_(sc.seed, "init-dest", 0),
      monitors_(sys_) {
  sc_.validate();
  nsub_ = static_cast<int>(std::ceil(sys_.tau / sc_.dt - 1e-12));
  nsub_ = std::max(nsub_, 1);
  hsub_ = sys_.tau / nsub_;
  tper_steps_ = std::max(1, sc_.policy.T_per);

  trace_.m = world_.m();
  trace_.tau = sys_.tau;
  trace_.horizon = sc_.horizon;

  if (sc_.metrics.flow_points.empty()) {
    for (const RampLayout& rl : sys_.ramps)
      flow_points_.push_back(sys_.wrap(rl.merge_arc + 50.0));
  } else {
    for (double p : sc_.metrics.flow_points) flow_points_.push_back(sys_.wrap(p));
  }
  trace_.flow_point_arc = flow_points_;
  trace_.flow.resize(flow_points_.size());
  flow_step_.assign(flow_points_.size(), 0);

  det_period_ = policy_->detector_period();
  next_det_ = det_period_;
  det_time_int_.assign(static_cast<size_t>(world_.m()), 0.0);

  setup_initial();
}

void Engine::ensure_slot(int slot) {
  size_t need = static_cast<size_t>(slot) + 1;
  if (x_prev_.size() < need) {
    x_prev_.resize(need, 0.0);
    x_old_.resize(need, 0.0);
    cmd_.resize(need, 0.0);
    checked_.resize(need, -1);
    in_active_.resize(need, 0);
    vcon_.resize(need);
    pred_until_.resize(need, -1);
    line_block_until_.resize(need, -1);
  }
  x_prev_[static_cast<size_t>(slot)] = world_.veh(slot).x;
  x_old_[static_cast<size_t>(slot)] = world_.veh(slot).x;
  cmd_[static_cast<size_t>(slot)] = 0.0;
  checked_[static_cast<size_t>(slot)] = -1;
  vcon_[static_cast<size_t>(slot)].until = -1;
  pred_until_[static_cast<size_t>(slot)] = -1;
  line_block_until_[static_cast<size_t>(slot)] = -1;
}

void Engine::setup_initial() {
  const InitialConfig& ic = sc_.initial;
  const int m = world_.m();
  if (ic.kind == "free-flow-slots") {
    for (int l = 0; l < ic.n; ++l) {
      double arc = sys_.wrap(sys_.anchor + l * sys_.pitch);
      int dest = m > 0 ? static_cast<int>(dest_rng_.next_below(static_cast<std::uint64_t>(m))) : -1;
      int slot = world_.seed_mainline(0.0, arc, sys_.params.Vf, DriveMode::speed_tracking,
                                      dest, next_id_++);
      ensure_slot(slot);
    }
  } else if (ic.kind == "congested") {
    double spacing = ic.gap + sys_.params.L;
    for (int l = 0; l < ic.n; ++l) {
      double arc = sys_.wrap(8.0 * sys_.P - l * spacing);
      int dest = m > 0 ? static_cast<int>(dest_rng_.next_below(static_cast<std::uint64_t>(m))) : -1;
      int slot = world_.seed_mainline(0.0, arc, ic.v0, DriveMode::safety, dest, next_id_++);
      ensure_slot(slot);
      mark_active(slot);
    }
  }
  idle_until_ = ic.idle_seconds;
  idle_done_ = ic.idle_seconds <= 0;
}

long Engine::total_queue() const {
  long q = 0;
  for (int i = 0; i < world_.m(); ++i)
    q += static_cast<long>(world_.queue(i).size());
  return q;
}

void Engine::mark_active(int s) {
  if (in_active_[static_cast<size_t>(s)]) return;
  in_active_[static_cast<size_t>(s)] = 1;
  active_.push_back(s);
}

void Engine::drop_slot(int s) {
  if (in_active_[static_cast<size_t>(s)]) {
    auto it = std::find(active_.begin(), active_.end(), s);
    if (it != active_.end()) {
      *it = active_.back();
      active_.pop_back();
    }
    in_active_[static_cast<size_t>(s)] = 0;
  }
  vcon_[static_cast<size_t>(s)].until = -1;
  pred_until_[static_cast<size_t>(s)] = -1;
  line_block_until_[static_cast<size_t>(s)] = -1;
}

void Engine::enter_safety(int s) {
  Vehicle& me = world_.veh(s);
  me.mode = DriveMode::safety;
  me.ever_safety = true;
  me.passive = false;
  mark_active(s);
}

void Engine::exit_safety(int s, double t) {
  Vehicle& me = world_.veh(s);
  me.mode = DriveMode::speed_tracking;
  me.profile = MotionProfile::speed_tracking(t, me.x, me.v, me.a, sys_.params);
  me.passive = false;
  if (me.stage == Stage::on_ramp)
    me.land_t = std::max(me.land_t, me.profile.end_time());
  mark_active(s);
}

// ---------------------------------------------------------------- step ---

void Engine::step() {
  const double t0 = t_;

  if (!idle_done_ && t0 >= idle_until_ - kEps) {
    for (int s : world_.mainline_slots()) world_.retarget_exit(s);
    idle_done_ = true;
  }
  const bool idle = !idle_done_;

  if (!idle) do_arrivals();

  if (step_ % tper_steps_ == 0) {
    MonitorSample smp = monitors_.publish(world_, t_, step_);
    policy_->on_monitor(smp);
    trace_.monitor.push_back(std::move(smp));
  }

  grid_decisions();

  for (int j = 0; j < nsub_; ++j) {
    double ts = t0 + j * hsub_;
    double te = (j + 1 == nsub_) ? t0 + sys_.tau : t0 + (j + 1) * hsub_;
    if (policy_->continuous()) {
      GridContext ctx{this, world_.queue_lengths(), ts, step_};
      std::vector<int> rel;
      policy_->decide_continuous(ctx, rel);
      if (!rel.empty()) execute_releases(rel, ts);
    }
    if (subtick_ % kPredStride == 0) predict_mergers(ts);
    controller_pass(ts);
    integrate(ts, te - ts);
    if (!idle) process_exits(te, te - ts);
    attempt_merges(te, te - ts);
    if (sc_.metrics.ttc && subtick_ % std::max(1, sc_.metrics.ttc_stride) == 0)
      sample_ttc(te);
    if (det_period_ > 0) accumulate_detectors(te, te - ts);
    ++subtick_;
    t_ = te;
  }

  count_flow_step();

  std::vector<int> ql = world_.queue_lengths();
  long qs = 0;
  for (int q : ql) qs += q;
  trace_.queues.push_back(std::move(ql));
  trace_.total_queue.push_back(static_cast<double>(qs));
  trace_.comms.push_back(policy_->comm_step(pending_comm_));

  world_.check_conservation();
  world_.check_physical(t_);

  ++step_;
  t_ = static_cast<double>(step_) * sys_.tau;  // keep the grid exact
}

void Engine::run(const std::function<bool(const Engine&)>& stop) {
  while (step_ < sc_.horizon) {
    step();
    if (stop && stop(*this)) break;
  }
  trace_.horizon = step_;
  if (const auto* cs = policy_->cycle_starts()) trace_.cycle_starts = *cs;
}

Trace Engine::take_trace() {
  trace_.horizon = step_;
  if (const auto* cs = policy_->cycle_starts()) trace_.cycle_starts = *cs;
  return std::move(trace_);
}

// ----------------------------------------------------- grid activities ---

void Engine::do_arrivals() {
  for (const Arrival& a : sampler_.sample_step()) {
    QueueEntry e;
    e.id = next_id_++;
    e.t_arrival = t_;
    e.destination = a.destination;
    e.connected = pen_rng_.bernoulli(sc_.policy.penetration);
    world_.queue(a.origin).push_back(e);
    world_.note_arrival();
  }
}

void Engine::grid_decisions() {
  GridContext ctx{this, world_.queue_lengths(), t_, step_};

  pending_comm_.n_road = world_.on_road_count();
  pending_comm_.n_merge_area = merge_area_count();
  long qsum = 0;
  for (int q : ctx.queue_len) qsum += q;
  pending_comm_.queue_sum = qsum;
  pending_comm_.monitor_ticked = (step_ % tper_steps_ == 0);

  size_t before = policy_->cycle_starts() ? policy_->cycle_starts()->size() : 0;
  std::vector<int> rel;
  policy_->decide(ctx, rel);
  size_t after = policy_->cycle_starts() ? policy_->cycle_starts()->size() : 0;
  pending_comm_.cycle_started = after > before;

  if (!rel.empty()) execute_releases(rel, t_);
}

bool Engine::physical_spawn_ok(int ramp) const {
  const auto& lane = world_.ramp_lane(ramp);
  if (lane.empty()) return true;
  const Vehicle& pr = world_.veh(lane.back());
  const RampLayout& rl = sys_.ramps[static_cast<size_t>(ramp)];
  double meter_x = rl.merge_arc - rl.ramp_run;
  double gap = pr.x - meter_x - sys_.params.L;
  return gap >= std::max(safety_distance(0.0, pr.v, sys_.params), 0.25) - kEps;
}

void Engine::execute_releases(const std::vector<int>& release, double t) {
  for (int r : release) {
    if (r < 0 || r >= world_.m()) continue;
    auto& q = world_.queue(r);
    if (q.empty()) continue;
    if (!physical_spawn_ok(r)) {
      ++trace_.blocked_spawns;
      continue;
    }
    QueueEntry e = q.front();
    q.pop_front();
    int slot = world_.spawn_on_ramp(r, t, e.destination, e.id, e.connected);
    world_.veh(slot).t_arrival = e.t_arrival;
    ensure_slot(slot);
    policy_->on_released(r, t);
    ++trace_.release_count;
  }
}

// ------------------------------------------------------- merge forecasts ---

void Engine::predict_mergers(double ts) {
  pred_slots_.clear();
  const Params& p = sys_.params;
  for (int i = 0; i < world_.m(); ++i) {
    const auto& lane = world_.ramp_lane(i);
    for (size_t k = 0; k < lane.size(); ++k) {
      int s = lane[k];
      Vehicle& me = world_.veh(s);
      if (me.held_at_line) continue;
      if (me.x >= me.merge_x - 1e-6) continue;  // insertion logic owns the line
      if (k > 0 && !me.connected) continue;

      TrackState ego;
      ego.id = s;
      ego.t = ts;
      ego.x = me.x - me.merge_x;  // axis origin at the merge point
      ego.v = me.v;
      ego.speed_tracking = (me.mode == DriveMode::speed_tracking);
      ego.profile = ego.speed_tracking ? &me.profile : nullptr;
      ego.shift = -me.merge_x;

      double horizon = std::max(me.land_t, ts + sys_.land_time);

      if (k == 0) {
        // line admission by sight: the lead lane vehicle watches the whole
        // mainline, connected or not, and refuses the line when its landing
        // would break the spacing rule around the insertion point
        std::vector<TrackState> seen = world_.merge_candidates(i, ts, false, s);
        MergeCheck eyes = check_merge_window(ego, 0.0, horizon, seen, p);
        if (!eyes.ok)
          line_block_until_[static_cast<size_t>(s)] = subtick_ + kPredStride - 1;
        if (!me.connected) continue;
      }

      std::vector<TrackState> cand = world_.merge_candidates(i, ts, true, s);
      MergeCheck mc = check_merge_window(ego, 0.0, horizon, cand, p);
      if (mc.at_merge.t_cross == kNever) {
        pred_until_[static_cast<size_t>(s)] = -1;
        continue;
      }
      long until = subtick_ + kPredStride - 1;
      if (mc.ok) {
        pred_until_[static_cast<size_t>(s)] = -1;
        continue;
      }
      pred_until_[static_cast<size_t>(s)] = until;
      pred_slots_.push_back(s);
      if (mc.worst_margin < -1e-6)
        me.worst_pred_short = std::max(me.worst_pred_short, -mc.worst_margin);
      if (mc.at_merge.leader_id >= 0)
        vcon_[static_cast<size_t>(s)] =
            VirtualCon{mc.at_merge.leader_gap, mc.at_merge.leader_v, until};

      int f = mc.at_merge.follower_id;
      if (f >= 0 && world_.veh(f).stage == Stage::mainline) {
        double need = safety_distance(mc.at_merge.follower_v, mc.at_merge.ego_v, p);
        if (mc.at_merge.follower_gap < need - 1e-6) {
          vcon_[static_cast<size_t>(f)] =
              VirtualCon{mc.at_merge.follower_gap, mc.at_merge.ego_v, until};
          pred_until_[static_cast<size_t>(f)] = until;
          Vehicle& fv = world_.veh(f);
          fv.worst_pred_short =
              std::max(fv.worst_pred_short, need - mc.at_merge.follower_gap);
          pred_slots_.push_back(f);
        }
      }
    }
  }
}

// --------------------------------------------------------- controller ---

void Engine::controller_pass(double ts) {
  scratch_check_.clear();
  for (int i = 0; i < world_.m(); ++i)
    for (int s : world_.ramp_lane(i)) scratch_check_.push_back(s);

  for (size_t i = 0; i < active_.size();) {
    int s = active_[i];
    const Vehicle& v = world_.veh(s);
    if (!v.on_road() || (v.mode == DriveMode::speed_tracking && v.passive)) {
      in_active_[static_cast<size_t>(s)] = 0;
      active_[i] = active_.back();
      active_.pop_back();
      continue;
    }
    scratch_check_.push_back(s);
    if (v.stage == Stage::mainline && v.behind >= 0) scratch_check_.push_back(v.behind);
    ++i;
  }

  for (int s : pred_slots_)
    if (vcon_[static_cast<size_t>(s)].until >= subtick_ ||
        pred_until_[static_cast<size_t>(s)] >= subtick_)
      scratch_check_.push_back(s);

  for (int s : scratch_check_) evaluate_vehicle(s, ts);
}

void Engine::evaluate_vehicle(int s, double ts) {
  Vehicle& me = world_.veh(s);
  if (!me.on_road()) return;
  if (checked_[static_cast<size_t>(s)] == subtick_) return;
  checked_[static_cast<size_t>(s)] = subtick_;
  if (me.held_at_line) {
    cmd_[static_cast<size_t>(s)] = 0.0;
    return;
  }
  const Params& p = sys_.params;

  double worst_margin = kNever, worst_gap = kNever, worst_req = 0.0;
  double cmd = kNever;
  bool any = false;

  auto consider = [&](double gap, double v_other, bool physical) {
    double req = safety_distance(me.v, v_other, p);
    double margin = gap - req;
    if (margin < worst_margin) {
      worst_margin = margin;
      worst_gap = gap;
      worst_req = req;
    }
    if (physical && margin < -1e-6)
      me.worst_gap_short = std::max(me.worst_gap_short, -margin);
    cmd = std::min(cmd, safety_mode_accel(gap, me.v, v_other, p));
    any = true;
  };

  if (me.stage == Stage::mainline) {
    if (me.ahead >= 0) {
      double g = world_.gap_ahead(s);
      if (g < kNever) consider(g, world_.veh(me.ahead).v, true);
    }
  } else {
    const auto& lane = world_.ramp_lane(me.origin);
    for (size_t i = 0; i < lane.size(); ++i) {
      if (lane[i] != s) continue;
      if (i > 0) {
        const Vehicle& pr = world_.veh(lane[i - 1]);
        consider(pr.x - me.x - p.L, pr.v, true);
      }
      break;
    }
    // denied admission: the end of the lane acts as a standing obstacle, so
    // the vehicle rolls out and comes to rest with its nose on the line
    if (!lane.empty() && lane.front() == s && me.x < me.merge_x &&
        line_block_until_[static_cast<size_t>(s)] >= subtick_)
      consider(me.merge_x - me.x + p.S0, 0.0, false);
  }
  const VirtualCon& vc = vcon_[static_cast<size_t>(s)];
  if (vc.until >= subtick_) consider(vc.gap, vc.v_other, false);

  bool pred = pred_until_[static_cast<size_t>(s)] >= subtick_;
  DriveMode next = any ? update_mode(me.mode, worst_gap, worst_req, pred, p)
                       : update_mode(me.mode, kNever, 0.0, pred, p);
  if (next == DriveMode::safety) {
    enter_safety(s);
    cmd_[static_cast<size_t>(s)] =
        any ? cmd : std::clamp(p.k_v * (p.Vf - me.v), p.a_min, p.a_max);
  } else if (me.mode == DriveMode::safety) {
    exit_safety(s, ts);
  }
}

// --------------------------------------------------------- integration ---

void Engine::integrate(double ts, double dt) {
  merge_cand_.clear();
  exit_cand_.clear();
  const double te = ts + dt;
  const Params& p = sys_.params;

  for (int s = 0; s < world_.storage_size(); ++s) {
    Vehicle& me = world_.veh(s);
    if (!me.on_road()) continue;
    x_old_[static_cast<size_t>(s)] = me.x;

    if (me.held_at_line) {
      // pinned at the line until a gap opens
    } else if (me.mode == DriveMode::speed_tracking) {
      me.x = me.profile.pos(te);
      if (!me.passive) {
        me.v = me.profile.vel(te);
        me.a = me.profile.acc(te);
        if (te >= me.profile.end_time() - 1e-12) {
          me.v = p.Vf;
          me.a = 0.0;
          if (me.stage == Stage::mainline) me.passive = true;
        }
      }
    } else {
      double want = std::clamp(cmd_[static_cast<size_t>(s)], p.a_min, p.a_max);
      double dj = std::clamp(want - me.a, -p.J_max * dt, p.J_max * dt);
      me.a += dj;
      me.v += me.a * dt;
      if (me.v < 0) {
        me.v = 0;
        if (me.a < 0) me.a = 0;
      }
      if (me.v > p.v_cap()) {
        me.v = p.v_cap();
        if (me.a > 0) me.a = 0;
      }
      me.x += me.v * dt;
    }

    if (me.stage == Stage::on_ramp && !me.held_at_line &&
        line_block_until_[static_cast<size_t>(s)] >= subtick_ &&
        me.x >= me.merge_x - 0.05 && me.v <= 0.3) {
      // rolled out to the line while denied admission: park and retry
      me.held_at_line = true;
      me.x = me.merge_x;
      me.v = 0;
      me.a = 0;
      enter_safety(s);
      ++trace_.held_merges;
    }
    if (me.stage == Stage::on_ramp &&
        (me.held_at_line || me.x >= me.merge_x - kEps))
      merge_cand_.push_back(s);
    else if (me.stage == Stage::mainline && me.x >= me.exit_x)
      exit_cand_.push_back(s);
  }
}

void Engine::process_exits(double te, double dt) {
  for (int s : exit_cand_) {
    Vehicle& me = world_.veh(s);
    if (!me.on_road() || me.stage != Stage::mainline) continue;
    double tx;
    if (me.mode == DriveMode::speed_tracking) {
      tx = me.profile.time_at_pos(me.exit_x);
    } else {
      double moved = me.x - x_old_[static_cast<size_t>(s)];
      tx = moved > 1e-12 ? te - dt + dt * (me.exit_x - x_old_[static_cast<size_t>(s)]) / moved
                         : te;
    }
    tx = std::clamp(tx, te - dt, te);

    fold_flow(s, me.exit_x);
    monitors_.fold_exit(world_, s);
    if (sc_.metrics.vehicles)
      trace_.vehicles.push_back(VehicleRecord{me.id, me.origin, me.destination,
                                              me.connected, me.t_arrival, me.t_release,
                                              me.t_merge, tx});
    ++trace_.completed;
    world_.remove_exited(s, tx);
    drop_slot(s);
    world_.recycle(s);
  }
}

double Engine::min_insert_gap(double v_follow, double v_lead) const {
  // full spacing requirement: the new neighbor may brake to a stop right
  // after insertion, so nothing short of the stopping-safe gap is admissible
  return std::max(safety_distance(v_follow, v_lead, sys_.params), 0.3);
}

void Engine::attempt_merges(double te, double dt) {
  const Params& p = sys_.params;
  for (int s : merge_cand_) {
    Vehicle& me = world_.veh(s);
    if (!me.on_road() || me.stage != Stage::on_ramp) continue;
    const auto& lane = world_.ramp_lane(me.origin);
    if (lane.empty() || lane.front() != s) continue;

    double arc = world_.arc_of(s);
    int ld = world_.nearest_downstream(arc);
    // follower comes from the leader's list link, the same neighbor the
    // insertion will wire in behind the merger; an independent geometric scan
    // can miss a vehicle sitting within rounding distance of the merge arc
    int fl = ld >= 0 ? world_.veh(ld).behind : world_.nearest_upstream(arc);
    double gap_ld = kNever, gap_fl = kNever;
    if (ld >= 0)
      gap_ld = (world_.ring() ? sys_.forward_arc(arc, world_.arc_of(ld))
                              : world_.veh(ld).x - me.x) -
               p.L;
    if (fl >= 0)
      gap_fl = (world_.ring() ? sys_.forward_arc(world_.arc_of(fl), arc)
                              : me.x - world_.veh(fl).x) -
               p.L;
    bool ok =
        (ld < 0 || gap_ld >= min_insert_gap(me.v, world_.veh(ld).v) - 1e-6) &&
        (fl < 0 || gap_fl >= min_insert_gap(world_.veh(fl).v, me.v) - 1e-6);
    // a vehicle that reaches the line at speed cannot stop on the spot; as
    // long as the hole is physically open, completing the merge disturbs the
    // neighbors far less than a sudden standstill would
    if (!ok && !me.held_at_line && me.v > 5.0 && gap_ld >= 0.3 && gap_fl >= 0.3)
      ok = true;

    if (ok) {
      double tm;
      if (me.held_at_line) {
        tm = te;
      } else if (me.mode == DriveMode::speed_tracking) {
        tm = me.profile.time_at_pos(me.merge_x);
      } else {
        double moved = me.x - x_old_[static_cast<size_t>(s)];
        tm = moved > 1e-12
                 ? te - dt + dt * (me.merge_x - x_old_[static_cast<size_t>(s)]) / moved
                 : te;
      }
      tm = std::clamp(tm, te - dt, te);
      me.held_at_line = false;
      world_.merge_into_mainline(s, tm);
      x_prev_[static_cast<size_t>(s)] = me.x;
      vcon_[static_cast<size_t>(s)].until = -1;
      pred_until_[static_cast<size_t>(s)] = -1;
      line_block_until_[static_cast<size_t>(s)] = -1;
      mark_active(s);
    } else if (!me.held_at_line) {
      // no admissible gap: stop at the line rather than force the merge
      me.held_at_line = true;
      me.x = me.merge_x;
      me.v = 0;
      me.a = 0;
      enter_safety(s);
      ++trace_.held_merges;
    }
  }
}

// ------------------------------------------------------------ sampling ---

void Engine::sample_ttc(double te) {
  const MetricsConfig& mc = sc_.metrics;
  const Params& p = sys_.params;
  for (int i = 0; i < world_.m(); ++i) {
    if (mc.ttc_ramp >= 0 && i != mc.ttc_ramp) continue;
    double mw = sys_.wrap(sys_.ramps[static_cast<size_t>(i)].merge_arc);

    for (int s = 0; s < world_.storage_size(); ++s) {
      const Vehicle& me = world_.veh(s);
      if (!me.alive || me.stage != Stage::mainline) continue;
      double off = world_.signed_offset(mw, world_.arc_of(s));
      if (std::abs(off) > mc.ttc_radius) continue;
      int ld = me.ahead;
      if (ld < 0 || ld == s) continue;
      double g = world_.gap_ahead(s);
      double dv = me.v - world_.veh(ld).v;
      if (dv <= 1e-9) continue;
      double ttc = g / dv;
      if (ttc >= 0 && ttc <= mc.ttc_discard_above)
        trace_.ttc.push_back(TtcRow{te, me.id, world_.veh(ld).id, ttc});
    }

    for (int s : world_.ramp_lane(i)) {
      const Vehicle& me = world_.veh(s);
      if (me.merge_x - me.x > mc.ttc_radius) continue;
      double arc = world_.arc_of(s);
      int ld = world_.nearest_downstream(arc);
      if (ld >= 0) {
        double g = (world_.ring() ? sys_.forward_arc(arc, world_.arc_of(ld))
                                  : world_.veh(ld).x - me.x) -
                   p.L;
        double dv = me.v - world_.veh(ld).v;
        if (dv > 1e-9 && g / dv <= mc.ttc_discard_above && g >= 0)
          trace_.ttc.push_back(TtcRow{te, me.id, world_.veh(ld).id, g / dv});
      }
      int fl = world_.nearest_upstream(arc);
      if (fl >= 0) {
        double g = (world_.ring() ? sys_.forward_arc(world_.arc_of(fl), arc)
                                  : me.x - world_.veh(fl).x) -
                   p.L;
        double dv = world_.veh(fl).v - me.v;
        if (dv > 1e-9 && g / dv <= mc.ttc_discard_above && g >= 0)
          trace_.ttc.push_back(TtcRow{te, world_.veh(fl).id, me.id, g / dv});
      }
    }
  }
}

void Engine::accumulate_detectors(double te, double dt) {
  double len = sc_.policy.detector_len;
  for (int i = 0; i < world_.m(); ++i) {
    double mw = sys_.wrap(sys_.ramps[static_cast<size_t>(i)].merge_arc);
    det_time_int_[static_cast<size_t>(i)] += world_.occupied_length(mw, len) * dt;
  }
  if (te >= next_det_ - kEps) {
    for (int i = 0; i < world_.m(); ++i) {
      double pct = 100.0 * det_time_int_[static_cast<size_t>(i)] / (len * det_period_);
      policy_->on_detector(i, pct);
      det_time_int_[static_cast<size_t>(i)] = 0.0;
    }
    next_det_ += det_period_;
  }
}

// ----------------------------------------------------------- flow count ---

long Engine::crossings(double x0, double x1, double point) const {
  if (x1 <= x0) return 0;
  if (world_.ring()) {
    double P = sys_.P;
    return static_cast<long>(std::floor((x1 - point) / P)) -
           static_cast<long>(std::floor((x0 - point) / P));
  }
  return (x0 < point && x1 >= point) ? 1 : 0;
}

void Engine::fold_flow(int slot, double x_to) {
  double& anchor = x_prev_[static_cast<size_t>(slot)];
  for (size_t k = 0; k < flow_points_.size(); ++k)
    flow_step_[k] += crossings(anchor, x_to, flow_points_[k]);
  anchor = x_to;
}

void Engine::count_flow_step() {
  for (int s = 0; s < world_.storage_size(); ++s) {
    const Vehicle& me = world_.veh(s);
    if (!me.alive || me.stage != Stage::mainline) continue;
    fold_flow(s, me.x);
  }
  for (size_t k = 0; k < flow_points_.size(); ++k) {
    trace_.flow[k].push_back(flow_step_[k]);
    flow_step_[k] = 0;
  }
}

// ------------------------------------------------------------- oracle ---

bool Engine::meter_spacing_ok(int ramp, double extra) const {
  const auto& lane = world_.ramp_lane(ramp);
  const Params& p = sys_.params;
  const RampLayout& rl = sys_.ramps[static_cast<size_t>(ramp)];
  double meter_x = rl.merge_arc - rl.ramp_run;
  for (auto it = lane.rbegin(); it != lane.rend(); ++it) {
    const Vehicle& o = world_.veh(*it);
    if (!o.connected) continue;
    double gap = o.x - meter_x - p.L;
    return gap >= safety_distance(0.0, o.v, p) + extra - kEps;
  }
  return true;
}

bool Engine::merge_window_ok(int ramp, double extra, bool merge_instant_only) const {
  const Params& p = sys_.params;
  const RampLayout& rl = sys_.ramps[static_cast<size_t>(ramp)];
  MotionProfile plan = MotionProfile::speed_tracking(t_, -rl.ramp_run, 0.0, 0.0, p);
  TrackState ego;
  ego.id = -1;
  ego.t = t_;
  ego.x = -rl.ramp_run;
  ego.v = 0;
  ego.speed_tracking = true;
  ego.profile = &plan;
  std::vector<TrackState> cand = world_.merge_candidates(ramp, t_, true);
  MergeCheck mc = check_merge_window(ego, 0.0, t_ + sys_.land_time, cand, p, extra,
                                     merge_instant_only);
  return mc.ok;
}

bool Engine::road_free_flow() const { return world_.all_free_flow(t_); }

double Engine::tracking_deviation_now() const {
  return MonitorBoard::tracking_deviation(world_);
}

double Engine::spacing_deviation_now() const {
  return MonitorBoard::spacing_deviation(world_);
}

int Engine::merge_area_count() const {
  int n = world_.lane_count();
  for (int s = 0; s < world_.storage_size(); ++s) {
    const Vehicle& me = world_.veh(s);
    if (!me.alive || me.stage != Stage::mainline) continue;
    double arc = world_.arc_of(s);
    for (int i = 0; i < world_.m(); ++i) {
      const RampLayout& rl = sys_.ramps[static_cast<size_t>(i)];
      double span = sys_.pitch + rl.land_offset;
      double d = world_.ring()
                     ? sys_.forward_arc(sys_.wrap(rl.merge_arc - sys_.pitch), arc)
                     : me.x - (rl.merge_arc - sys_.pitch);
      if (d >= 0 && d <= span) {
        ++n;
        break;
      }
    }
  }
  return n;
}

}  // namespace rampsim
