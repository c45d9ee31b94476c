#ifndef RAMPSIM_PREDICTION_HPP
#define RAMPSIM_PREDICTION_HPP

#include <limits>
#include <vector>

#include "rampsim/params.hpp"
#include "rampsim/profile.hpp"

namespace rampsim {

constexpr double kNever = std::numeric_limits<double>::infinity();

// Kinematic snapshot of one vehicle as seen by a ramp controller at decision
// time.  `x` is an unwrapped path coordinate shared by every track in the
// same assessment (the caller centers ring positions near the ego).  Ramp
// vehicles that have not merged yet are projected onto the mainline axis by
// subtracting their remaining distance to the merge point.
struct TrackState {
  int id = -1;
  double t = 0;   // snapshot time
  double x = 0;   // front-bumper position
  double v = 0;
  bool speed_tracking = true;
  const MotionProfile* profile = nullptr;  // required when speed_tracking
  // Added to every profile read: the profile may be planned on a different
  // (per-vehicle) axis than the assessment axis.  x already includes it.
  double shift = 0;
  // Position at which the track leaves the road (destination off-ramp,
  // unwrapped to the same axis).  Tracks past this point are absent.
  double exit_x = std::numeric_limits<double>::infinity();
};

struct PredictedState {
  double x = 0, v = 0;
  bool present = false;
};

// Speed-tracking vehicles follow their published plan; others are carried at
// constant speed.
PredictedState predict_track(const TrackState& track, double t);

// Time at which the track's front bumper reaches position x_target.
// Returns kNever for a stopped track that is not planning to move.
double predict_crossing_time(const TrackState& track, double x_target);

struct VirtualNeighbors {
  double t_cross = kNever;  // ego's predicted arrival at the merge point
  int leader_id = -1, follower_id = -1;
  double leader_gap = std::numeric_limits<double>::infinity();
  double follower_gap = std::numeric_limits<double>::infinity();
  double leader_v = 0, follower_v = 0;
  double ego_v = 0;
};

// Merge protocol: project every candidate to the ego's merge-point crossing
// time and pick the nearest predicted-downstream and predicted-upstream
// vehicles.  Gaps are bumper-to-bumper at that instant.
VirtualNeighbors assign_virtual_leader(const TrackState& ego, double merge_x,
                                       const std::vector<TrackState>& candidates,
                                       const Params& params);

struct MergeCheck {
  bool ok = false;
  double worst_margin = std::numeric_limits<double>::infinity();
  VirtualNeighbors at_merge;  // neighbors at the crossing instant
};

// Full release assessment: at the crossing instant and at every release-grid
// instant until the ego joins the lattice, the predicted gap to the nearest
// downstream vehicle must cover the ego's safety distance and the nearest
// upstream vehicle's gap must cover its own.  `required_extra` widens every
// requirement (space-gap policies pass a positive value).
// `check_from` limits the scan (pass t_cross for a merge-instant-only test).
MergeCheck check_merge_window(const TrackState& ego, double merge_x, double land_time,
                              const std::vector<TrackState>& candidates,
                              const Params& params, double required_extra = 0.0,
                              bool merge_instant_only = false);

}  // namespace rampsim

#endif
