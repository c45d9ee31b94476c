#include "rampsim/world.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace rampsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

World::World(const SlotSystem& sys) : sys_(sys) {
  lanes_.resize(static_cast<size_t>(sys_.m()));
  queues_.resize(static_cast<size_t>(sys_.m()));
}

int World::alloc_slot() {
  if (!free_.empty()) {
    int s = free_.back();
    free_.pop_back();
    vehicles_[static_cast<size_t>(s)] = Vehicle{};
    return s;
  }
  vehicles_.emplace_back();
  return static_cast<int>(vehicles_.size()) - 1;
}

double World::signed_offset(double from_arc, double to_arc) const {
  if (!ring()) return to_arc - from_arc;
  double d = sys_.forward_arc(from_arc, to_arc);
  return d > sys_.P / 2 ? d - sys_.P : d;
}

void World::link_between(int slot, int lead, int follow) {
  Vehicle& me = veh(slot);
  if (mainline_n_ == 0) {
    if (ring()) {
      me.ahead = me.behind = slot;
    } else {
      me.ahead = me.behind = -1;
    }
    any_ = slot;
  } else {
    me.ahead = lead;
    me.behind = follow;
    if (lead >= 0) veh(lead).behind = slot;
    if (follow >= 0) veh(follow).ahead = slot;
  }
  ++mainline_n_;
}

void World::unlink(int slot) {
  Vehicle& me = veh(slot);
  if (mainline_n_ == 1) {
    any_ = -1;
  } else {
    if (me.ahead >= 0) veh(me.ahead).behind = me.behind;
    if (me.behind >= 0) veh(me.behind).ahead = me.ahead;
    if (any_ == slot) any_ = (me.ahead >= 0 ? me.ahead : me.behind);
  }
  me.ahead = me.behind = -1;
  --mainline_n_;
}

int World::seed_mainline(double t, double arc, double v, DriveMode mode, int dest,
                         long id) {
  int slot = alloc_slot();
  Vehicle& me = veh(slot);
  me.id = id;
  me.alive = true;
  me.stage = Stage::mainline;
  me.origin = -1;
  me.destination = dest;
  me.t_arrival = t;
  me.t_release = t;
  me.t_merge = t;
  me.x = arc;
  me.v = v;
  me.a = 0;
  me.mode = mode;
  me.ever_safety = (mode == DriveMode::safety);
  if (mode == DriveMode::speed_tracking) {
    me.profile = MotionProfile::speed_tracking(t, arc, v, 0.0, params());
    me.passive = me.profile.end_time() <= t;
  }
  if (dest >= 0) {
    if (ring()) {
      double d = sys_.forward_arc(arc, sys_.offramp_arc[static_cast<size_t>(dest)]);
      if (d <= 1e-9) d += sys_.P;
      me.exit_x = me.x + d;
    } else {
      double off = sys_.offramp_arc[static_cast<size_t>(dest)];
      me.exit_x = off > arc ? off : arc;
    }
  }

  // splice into the follower ordering by arc
  int lead = -1, follow = -1;
  if (mainline_n_ > 0) {
    double best = kInf;
    for (int s = 0; s < storage_size(); ++s) {
      const Vehicle& o = veh(s);
      if (!o.alive || o.stage != Stage::mainline || s == slot) continue;
      double d = ring() ? sys_.forward_arc(arc, arc_of(s)) : o.x - arc;
      if (!ring() && d <= 0) continue;
      if (d < best) {
        best = d;
        lead = s;
      }
    }
    if (ring()) {
      follow = veh(lead).behind;
    } else if (lead >= 0) {
      follow = veh(lead).behind;
    } else {
      // new head of a straight road: old head becomes my follower
      double bx = -kInf;
      for (int s = 0; s < storage_size(); ++s) {
        const Vehicle& o = veh(s);
        if (o.alive && o.stage == Stage::mainline && s != slot && o.x > bx) {
          bx = o.x;
          follow = s;
        }
      }
    }
  }
  link_between(slot, lead, follow);
  ++seeded_n_;
  return slot;
}

int World::spawn_on_ramp(int ramp, double t, int dest, long id, bool connected) {
  const RampLayout& rl = sys_.ramps[static_cast<size_t>(ramp)];
  int slot = alloc_slot();
  Vehicle& me = veh(slot);
  me.id = id;
  me.alive = true;
  me.stage = Stage::on_ramp;
  me.origin = ramp;
  me.destination = dest;
  me.connected = connected;
  me.t_release = t;
  me.x = rl.merge_arc - rl.ramp_run;
  me.v = 0;
  me.a = 0;
  me.mode = DriveMode::speed_tracking;
  me.profile = MotionProfile::speed_tracking(t, me.x, 0.0, 0.0, params());
  me.merge_x = rl.merge_arc;
  me.land_t = t + sys_.land_time;
  double trip;
  if (ring()) {
    trip = sys_.forward_arc(rl.merge_arc, sys_.offramp_arc[static_cast<size_t>(dest)]);
    if (trip <= 1e-9) trip += sys_.P;
  } else {
    trip = sys_.offramp_arc[static_cast<size_t>(dest)] - rl.merge_arc;
  }
  me.exit_x = rl.merge_arc + trip;
  lanes_[static_cast<size_t>(ramp)].push_back(slot);
  return slot;
}

void World::merge_into_mainline(int slot, double t) {
  Vehicle& me = veh(slot);
  auto& lane = lanes_[static_cast<size_t>(me.origin)];
  if (lane.empty() || lane.front() != slot)
    throw SimAbort("merge out of lane order\n" + dump_state(t));
  lane.erase(lane.begin());
  me.stage = Stage::mainline;
  me.t_merge = t;
  me.vfollow = -1;
  me.held_at_line = false;

  double arc = arc_of(slot);
  int lead = -1, follow = -1;
  if (mainline_n_ > 0) {
    double best = kInf;
    for (int s = 0; s < storage_size(); ++s) {
      const Vehicle& o = veh(s);
      if (!o.alive || o.stage != Stage::mainline || s == slot) continue;
      double d = ring() ? sys_.forward_arc(arc, arc_of(s)) : o.x - arc;
      if (!ring() && d <= 0) continue;
      if (d < best) {
        best = d;
        lead = s;
      }
    }
    if (ring()) {
      follow = veh(lead).behind;
    } else if (lead >= 0) {
      follow = veh(lead).behind;
    } else {
      double bx = -kInf;
      for (int s = 0; s < storage_size(); ++s) {
        const Vehicle& o = veh(s);
        if (o.alive && o.stage == Stage::mainline && s != slot && o.x > bx) {
          bx = o.x;
          follow = s;
        }
      }
    }
  }
  link_between(slot, lead, follow);
}

void World::remove_exited(int slot, double t) {
  Vehicle& me = veh(slot);
  if (me.stage != Stage::mainline)
    throw SimAbort("exit from a non-mainline stage\n" + dump_state(t));
  unlink(slot);
  me.stage = Stage::exited;
  me.t_exit = t;
  ++exited_n_;
}

void World::recycle(int slot) {
  veh(slot).alive = false;
  free_.push_back(slot);
}

void World::retarget_exit(int slot) {
  Vehicle& me = veh(slot);
  if (me.destination < 0) return;
  double off = sys_.offramp_arc[static_cast<size_t>(me.destination)];
  if (ring()) {
    double d = sys_.forward_arc(arc_of(slot), off);
    if (d <= 1e-9) d += sys_.P;
    me.exit_x = me.x + d;
  } else {
    me.exit_x = std::max(me.x, off);
  }
}

double World::gap_ahead(int slot) const {
  const Vehicle& me = veh(slot);
  if (!ring()) {
    if (me.ahead < 0) return kInf;
    return veh(me.ahead).x - me.x - params().L;
  }
  if (mainline_n_ == 1) return sys_.P - params().L;
  return sys_.forward_arc(arc_of(slot), arc_of(me.ahead)) - params().L;
}

int World::nearest_upstream(double arc) const {
  int best = -1;
  double bestd = kInf;
  for (int s = 0; s < storage_size(); ++s) {
    const Vehicle& o = veh(s);
    if (!o.alive || o.stage != Stage::mainline) continue;
    double d = ring() ? sys_.forward_arc(arc_of(s), arc) : arc - o.x;
    if (d > 1e-12 && d < bestd) {
      bestd = d;
      best = s;
    }
  }
  return best;
}

int World::nearest_downstream(double arc) const {
  int best = -1;
  double bestd = kInf;
  for (int s = 0; s < storage_size(); ++s) {
    const Vehicle& o = veh(s);
    if (!o.alive || o.stage != Stage::mainline) continue;
    double d = ring() ? sys_.forward_arc(arc, arc_of(s)) : o.x - arc;
    if (d >= 0 && d < bestd) {
      bestd = d;
      best = s;
    }
  }
  return best;
}

std::vector<int> World::queue_lengths() const {
  std::vector<int> out(queues_.size());
  for (size_t i = 0; i < queues_.size(); ++i) out[i] = static_cast<int>(queues_[i].size());
  return out;
}

std::vector<int> World::road_slots() const {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(on_road_count()));
  for (int s = 0; s < storage_size(); ++s)
    if (veh(s).on_road()) out.push_back(s);
  return out;
}

std::vector<int> World::mainline_slots() const {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(mainline_n_));
  for (int s = 0; s < storage_size(); ++s)
    if (veh(s).alive && veh(s).stage == Stage::mainline) out.push_back(s);
  return out;
}

int World::lane_count() const {
  int n = 0;
  for (const auto& l : lanes_) n += static_cast<int>(l.size());
  return n;
}

std::vector<TrackState> World::merge_candidates(int ramp, double t, bool connected_only,
                                                int exclude_slot) const {
  const RampLayout& rl = sys_.ramps[static_cast<size_t>(ramp)];
  double merge_w = sys_.wrap(rl.merge_arc);
  std::vector<TrackState> out;
  out.reserve(static_cast<size_t>(on_road_count()));
  for (int s = 0; s < storage_size(); ++s) {
    const Vehicle& o = veh(s);
    if (!o.on_road() || s == exclude_slot) continue;
    if (connected_only && !o.connected) continue;
    double x_axis;
    if (o.stage == Stage::mainline) {
      x_axis = signed_offset(merge_w, arc_of(s));
    } else {
      // project a pre-merge vehicle onto the mainline through its own
      // merge point
      const RampLayout& orl = sys_.ramps[static_cast<size_t>(o.origin)];
      double to_merge = o.merge_x - o.x;
      x_axis = signed_offset(merge_w, sys_.wrap(orl.merge_arc)) - to_merge;
    }
    TrackState ts;
    ts.id = s;
    ts.t = t;
    ts.x = x_axis;
    ts.v = o.v;
    ts.speed_tracking = (o.mode == DriveMode::speed_tracking);
    ts.profile = &o.profile;
    ts.shift = x_axis - o.x;
    ts.exit_x = o.exit_x == kInf ? kInf : x_axis + (o.exit_x - o.x);
    out.push_back(ts);
  }
  return out;
}

double World::occupied_length(double a0, double len) const {
  // assumes len + L well below P, so a body crosses the window edge once
  double total = 0;
  const double L = params().L;
  for (int s = 0; s < storage_size(); ++s) {
    const Vehicle& o = veh(s);
    if (!o.alive || o.stage != Stage::mainline) continue;
    double front = ring() ? sys_.forward_arc(a0, arc_of(s)) : o.x - a0;
    double lo = std::max(front - L, 0.0);
    double hi = std::min(front, len);
    if (hi > lo) total += hi - lo;
    if (ring() && front - L < 0 && front - L + sys_.P < len)
      total += len - (front - L + sys_.P);
  }
  return total;
}

bool World::all_free_flow(double) const {
  for (int s = 0; s < storage_size(); ++s) {
    const Vehicle& o = veh(s);
    if (!o.on_road()) continue;
    if (o.mode != DriveMode::speed_tracking) return false;
  }
  return true;
}

double World::slot_misalignment(int slot, double t) const {
  double line0 = sys_.wrap(sys_.anchor + params().Vf * t);
  double r = ring() ? sys_.forward_arc(line0, arc_of(slot))
                    : std::fmod(std::abs(veh(slot).x - line0), sys_.pitch);
  double rem = std::fmod(r, sys_.pitch);
  return std::min(rem, sys_.pitch - rem);
}

void World::check_physical(double t) const {
  if (mainline_n_ > 0) {
    int start = any_;
    if (!ring()) {
      // walk to the head first
      int guard = 0;
      while (veh(start).ahead >= 0 && ++guard <= mainline_n_) start = veh(start).ahead;
    }
    int s = start;
    int seen = 0;
    double total = 0;
    while (true) {
      ++seen;
      if (seen > mainline_n_) throw SimAbort("follower ordering cycle\n" + dump_state(t));
      double g = gap_ahead(s);
      if (g < -1e-9) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "vehicle overlap: slot %d (id %ld) gap %.6f at t=%.4f\n", s,
                      veh(s).id, g, t);
        throw SimAbort(buf + dump_state(t));
      }
      if (ring()) total += g + params().L;
      int next = veh(s).behind;
      if (!ring()) {
        if (next < 0) break;
      } else if (next == start) {
        break;
      }
      s = next;
    }
    if (seen != mainline_n_)
      throw SimAbort("follower ordering lost vehicles\n" + dump_state(t));
    if (ring() && std::abs(total - sys_.P) > 1e-6 && mainline_n_ > 1)
      throw SimAbort("ring circumference mismatch\n" + dump_state(t));
  }
  for (int ramp = 0; ramp < m(); ++ramp) {
    const auto& lane = lanes_[static_cast<size_t>(ramp)];
    for (size_t k = 0; k < lane.size(); ++k) {
      const Vehicle& o = veh(lane[k]);
      if (o.x > o.merge_x + 1e-9)
        throw SimAbort("ramp vehicle past its merge point without merging\n" +
                       dump_state(t));
      if (k + 1 < lane.size() && veh(lane[k + 1]).x > o.x - params().L + 1e-9)
        throw SimAbort("acceleration-lane overlap\n" + dump_state(t));
    }
  }
}

void World::check_conservation() const {
  long queued = 0;
  for (const auto& q : queues_) queued += static_cast<long>(q.size());
  long lhs = seeded_n_ + arrived_n_;
  long rhs = queued + lane_count() + mainline_n_ + exited_n_;
  if (lhs != rhs) {
    std::ostringstream os;
    os << "conservation mismatch: seeded " << seeded_n_ << " + arrived " << arrived_n_
       << " != queued " << queued << " + lane " << lane_count() << " + mainline "
       << mainline_n_ << " + exited " << exited_n_;
    throw SimAbort(os.str());
  }
}

std::string World::dump_state(double t) const {
  std::ostringstream os;
  os << "state at t=" << t << " mainline=" << mainline_n_ << " lanes=" << lane_count()
     << "\n";
  for (int s = 0; s < storage_size(); ++s) {
    const Vehicle& o = veh(s);
    if (!o.on_road()) continue;
    os << "  slot " << s << " id " << o.id << " stage "
       << (o.stage == Stage::mainline ? "main" : "ramp") << " x=" << o.x
       << " arc=" << (o.stage == Stage::mainline ? arc_of(s) : -1) << " v=" << o.v
       << " a=" << o.a << " mode=" << (o.mode == DriveMode::safety ? "safety" : "track")
       << " ahead=" << o.ahead << " behind=" << o.behind << "\n";
  }
  return os.str();
}

}  // namespace rampsim
