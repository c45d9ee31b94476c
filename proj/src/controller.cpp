#include "rampsim/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rampsim/prediction.hpp"
#include "rampsim/profile.hpp"

namespace rampsim {

DriveMode update_mode(DriveMode current, double gap, double required_gap,
                      bool predicted_merge_violation, const Params& params) {
  if (current == DriveMode::speed_tracking) {
    if (gap < required_gap - 1e-9 || predicted_merge_violation) return DriveMode::safety;
    return DriveMode::speed_tracking;
  }
  if (gap >= required_gap + params.hysteresis_margin && !predicted_merge_violation)
    return DriveMode::speed_tracking;
  return DriveMode::safety;
}

double safety_mode_accel(double gap, double v_e, double v_l, const Params& params) {
  double err = gap - (params.h * v_e + params.S0);
  double cmd = params.k_p * err + params.k_v * (v_l - v_e);
  return std::clamp(cmd, params.a_min, params.a_max);
}

int merge_headway_multiple(double merge_speed, const Params& params) {
  if (merge_speed <= 0 || merge_speed > params.Vf + 1e-9)
    throw std::invalid_argument("merge speed must lie in (0, Vf]");

  const double tau = params.tau();
  const double pitch = params.pitch();
  MotionProfile rest = MotionProfile::speed_tracking(0, 0, 0, 0, params);
  const double t_total = rest.end_time();
  const int n_a = static_cast<int>(std::ceil(t_total / tau - 1e-9));
  const double land_time = n_a * tau;
  const double land_pos = rest.pos(land_time);

  double ramp_run;
  if (merge_speed >= params.Vf - 1e-12) {
    ramp_run = rest.end_pos();
  } else {
    double lo = 0, hi = t_total;
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      (rest.vel(mid) < merge_speed ? lo : hi) = mid;
    }
    ramp_run = rest.pos(0.5 * (lo + hi));
  }

  TrackState ego;
  ego.id = 0;
  ego.t = 0;
  ego.x = 0;
  ego.v = 0;
  ego.speed_tracking = true;
  ego.profile = &rest;

  for (int k = 2; k <= 64; ++k) {
    for (int j = 1; j < k; ++j) {
      // leader occupies the slot j pitches downstream of the ego's landing
      // point; the follower trails it by k pitches
      TrackState leader, follower;
      leader.id = 1;
      leader.t = 0;
      leader.x = land_pos + j * pitch - land_time * params.Vf;
      leader.v = params.Vf;
      leader.speed_tracking = false;
      follower = leader;
      follower.id = 2;
      follower.x = leader.x - k * pitch;
      std::vector<TrackState> cand{leader, follower};

      MergeCheck mc = check_merge_window(ego, ramp_run, land_time, cand, params);
      if (mc.ok) return k;
    }
  }
  throw std::runtime_error("no feasible release headway below 64 periods");
}

}  // namespace rampsim
