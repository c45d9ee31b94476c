#include "rampsim/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rampsim {

namespace {
// Gap checks tolerate tiny float noise; lattice geometry makes many of them
// exact at the boundary.
constexpr double kGapTol = 1e-6;
}  // namespace

PredictedState predict_track(const TrackState& track, double t) {
  PredictedState out;
  if (track.speed_tracking) {
    if (!track.profile) throw std::logic_error("speed-tracking track without a plan");
    out.x = track.profile->pos(t) + track.shift;
    out.v = track.profile->vel(t);
  } else {
    out.x = track.x + track.v * (t - track.t);
    out.v = track.v;
  }
  out.present = out.x < track.exit_x;
  return out;
}

double predict_crossing_time(const TrackState& track, double x_target) {
  if (track.x >= x_target) return track.t;
  if (track.speed_tracking) {
    if (!track.profile) throw std::logic_error("speed-tracking track without a plan");
    return track.profile->time_at_pos(x_target - track.shift);
  }
  if (track.v <= 0) return kNever;
  return track.t + (x_target - track.x) / track.v;
}

namespace {

struct NeighborSnapshot {
  int leader = -1, follower = -1;
  double leader_x = 0, leader_v = 0;
  double follower_x = 0, follower_v = 0;
};

NeighborSnapshot nearest_neighbors(double ego_x, double t,
                                   const std::vector<TrackState>& candidates) {
  NeighborSnapshot ns;
  double best_down = std::numeric_limits<double>::infinity();
  double best_up = -std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    PredictedState ps = predict_track(c, t);
    if (!ps.present) continue;
    if (ps.x >= ego_x) {
      if (ps.x < best_down) {
        best_down = ps.x;
        ns.leader = c.id;
        ns.leader_x = ps.x;
        ns.leader_v = ps.v;
      }
    } else if (ps.x > best_up) {
      best_up = ps.x;
      ns.follower = c.id;
      ns.follower_x = ps.x;
      ns.follower_v = ps.v;
    }
  }
  return ns;
}

}  // namespace

VirtualNeighbors assign_virtual_leader(const TrackState& ego, double merge_x,
                                       const std::vector<TrackState>& candidates,
                                       const Params& params) {
  VirtualNeighbors vn;
  vn.t_cross = predict_crossing_time(ego, merge_x);
  if (vn.t_cross == kNever) return vn;
  vn.ego_v = ego.speed_tracking ? ego.profile->vel(vn.t_cross) : ego.v;

  NeighborSnapshot ns = nearest_neighbors(merge_x, vn.t_cross, candidates);
  vn.leader_id = ns.leader;
  vn.follower_id = ns.follower;
  if (ns.leader >= 0) {
    vn.leader_gap = ns.leader_x - merge_x - params.L;
    vn.leader_v = ns.leader_v;
  }
  if (ns.follower >= 0) {
    vn.follower_gap = merge_x - ns.follower_x - params.L;
    vn.follower_v = ns.follower_v;
  }
  return vn;
}

MergeCheck check_merge_window(const TrackState& ego, double merge_x, double land_time,
                              const std::vector<TrackState>& candidates,
                              const Params& params, double required_extra,
                              bool merge_instant_only) {
  MergeCheck mc;
  mc.at_merge = assign_virtual_leader(ego, merge_x, candidates, params);
  const double t_cross = mc.at_merge.t_cross;
  if (t_cross == kNever) return mc;

  const double tau = params.tau();
  std::vector<double> times{t_cross};
  if (!merge_instant_only) {
    // release-grid instants between crossing and lattice entry
    double first = std::ceil(t_cross / tau - 1e-9) * tau;
    for (double s = first; s < land_time - 1e-9; s += tau)
      if (s > t_cross + 1e-9) times.push_back(s);
    if (land_time > t_cross + 1e-9) times.push_back(land_time);
  }

  mc.ok = true;
  for (double s : times) {
    double ex = ego.profile ? ego.profile->pos(s) + ego.shift : ego.x + ego.v * (s - ego.t);
    double ev = ego.profile ? ego.profile->vel(s) : ego.v;
    NeighborSnapshot ns = nearest_neighbors(ex, s, candidates);
    if (ns.leader >= 0) {
      double gap = ns.leader_x - ex - params.L;
      double need = safety_distance(ev, ns.leader_v, params) + required_extra;
      mc.worst_margin = std::min(mc.worst_margin, gap - need);
      if (gap < need - kGapTol) mc.ok = false;
    }
    if (ns.follower >= 0) {
      double gap = ex - ns.follower_x - params.L;
      double need = safety_distance(ns.follower_v, ev, params) + required_extra;
      mc.worst_margin = std::min(mc.worst_margin, gap - need);
      if (gap < need - kGapTol) mc.ok = false;
    }
  }
  return mc;
}

}  // namespace rampsim
