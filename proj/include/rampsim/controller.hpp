#ifndef RAMPSIM_CONTROLLER_HPP
#define RAMPSIM_CONTROLLER_HPP

#include "rampsim/params.hpp"

namespace rampsim {

enum class DriveMode { speed_tracking, safety };

// Mode transitions: drop into gap-regulation as soon as the spacing rule (or
// a merge prediction) is violated; return to speed tracking only with a
// hysteresis margin so boundary-exact spacings do not flap.
DriveMode update_mode(DriveMode current, double gap, double required_gap,
                      bool predicted_merge_violation, const Params& params);

// Commanded acceleration while regulating the gap behind a leader.  The
// target spacing is the equal-speed safety distance.
double safety_mode_accel(double gap, double v_e, double v_l, const Params& params);

// Smallest integer k such that a vehicle released from rest, crossing the
// merge point at `merge_speed`, can join the mainline between two free-flow
// slot occupants whose front bumpers are k release periods apart, with every
// spacing requirement holding from the merge instant until the ego reaches
// the lattice.  k = 2 means adjacent-slot merging.
int merge_headway_multiple(double merge_speed, const Params& params);

}  // namespace rampsim

#endif
