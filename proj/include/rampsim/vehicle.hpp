#ifndef RAMPSIM_VEHICLE_HPP
#define RAMPSIM_VEHICLE_HPP

#include <limits>

#include "rampsim/controller.hpp"
#include "rampsim/profile.hpp"

namespace rampsim {

enum class Stage { on_ramp, mainline, exited };

// One physical vehicle.  `x` is an unwrapped odometer along the travel
// direction; the arc position is wrap(x).  A ramp vehicle shares the axis of
// its merge point: x == merge arc exactly when it reaches the merge line, so
// merging never re-anchors the coordinate.
struct Vehicle {
  long id = -1;
  int origin = -1;       // releasing ramp; -1 for vehicles seeded on the road
  int destination = -1;  // off-ramp index; -1 circulates until retargeted
  bool connected = true; // false: invisible to monitors and release evidence
  bool alive = false;    // storage slot in use
  Stage stage = Stage::on_ramp;

  double t_arrival = -1, t_release = -1, t_merge = -1, t_exit = -1;

  double x = 0, v = 0, a = 0;
  DriveMode mode = DriveMode::speed_tracking;
  bool ever_safety = false;  // dropped out of speed tracking at least once
  bool passive = false;      // speed tracking finished, cruising at Vf
  MotionProfile profile;     // valid while mode == speed_tracking

  double exit_x = std::numeric_limits<double>::infinity();
  double merge_x = 0;   // unwrapped merge-point position (ramp vehicles)
  double land_t = -1;   // absolute lattice-join instant (ramp vehicles)

  int ahead = -1, behind = -1;  // mainline order, storage-slot indices
  int vfollow = -1;             // cached mainline follower while on the ramp
  bool held_at_line = false;    // insertion blocked, waiting at the merge line

  // rolling records, reset at every monitor publish
  double worst_gap_short = 0;   // peak (required - gap) while violating
  double worst_pred_short = 0;  // peak predicted shortfall at the merge point

  bool on_road() const { return alive && stage != Stage::exited; }
};

}  // namespace rampsim

#endif
