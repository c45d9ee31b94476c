#ifndef RAMPSIM_PROFILE_HPP
#define RAMPSIM_PROFILE_HPP

#include <vector>

#include "rampsim/params.hpp"

namespace rampsim {

// One constant-jerk piece.  Valid for t in [t0, t0 + dt].
struct ProfileSegment {
  double t0 = 0, dt = 0;
  double p0 = 0, v0 = 0, a0 = 0, j = 0;
};

// Closed-form trajectory of a vehicle regulating its speed toward Vf under
// jerk and acceleration limits.  After the final segment the vehicle cruises
// at exactly Vf with zero acceleration, so evaluation is valid for all
// t >= start_time().  Piecewise polynomial evaluation keeps long-horizon
// positions free of integration drift.
class MotionProfile {
 public:
  // Plan from state (p0, v0, a0) at absolute time t0.
  static MotionProfile speed_tracking(double t0, double p0, double v0, double a0,
                                      const Params& params);
  // Degenerate profile: cruise at constant speed from (t0, p0).
  static MotionProfile constant(double t0, double p0, double v);

  double pos(double t) const;
  double vel(double t) const;
  double acc(double t) const;

  double start_time() const { return t_start_; }
  // Absolute time at which the target (Vf, 0) is reached.
  double end_time() const { return t_end_; }
  double end_pos() const { return p_end_; }
  double cruise_speed() const { return v_end_; }

  // Earliest time with pos(t) >= p.  Requires p >= pos(start_time()) and a
  // profile that eventually moves (cruise speed > 0).
  double time_at_pos(double p) const;

  const std::vector<ProfileSegment>& segments() const { return segs_; }

 private:
  std::vector<ProfileSegment> segs_;
  double t_start_ = 0, t_end_ = 0, p_end_ = 0, v_end_ = 0;
};

}  // namespace rampsim

#endif
