#include "rampsim/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace rampsim {
namespace {

struct Cursor {
  double t, p, v, a;
};

void push_segment(std::vector<ProfileSegment>& segs, Cursor& c, double j, double dt) {
  if (dt <= 0) return;
  segs.push_back({c.t, dt, c.p, c.v, c.a, j});
  c.p += c.v * dt + 0.5 * c.a * dt * dt + j * dt * dt * dt / 6.0;
  c.v += c.a * dt + 0.5 * j * dt * dt;
  c.a += j * dt;
  c.t += dt;
}

// Plan a net speed change from (v, a) to (v_target, 0) in the `sgn` direction
// (+1 accelerating, -1 braking) with peak magnitude limit a_lim.  Assumes the
// change is reachable without crossing the target first, i.e. the caller has
// already peeled off any unavoidable overshoot.
void plan_toward(std::vector<ProfileSegment>& segs, Cursor& c, double v_target,
                 double sgn, double a_lim, double J) {
  // Work in mirrored coordinates where we always accelerate.
  double a0 = sgn * c.a;
  double dv = sgn * (v_target - c.v);
  // ramp a to peak, hold, ramp to zero; dv == (2*a_pk^2 - a0^2) / (2J) + a_pk*t2
  double a_pk = a_lim;
  double t_hold = (dv - (2.0 * a_pk * a_pk - a0 * a0) / (2.0 * J)) / a_pk;
  if (t_hold < 0) {
    a_pk = std::sqrt(std::max(0.0, J * dv + 0.5 * a0 * a0));
    t_hold = 0;
  }
  push_segment(segs, c, sgn * J, (a_pk - a0) / J);
  push_segment(segs, c, 0.0, t_hold);
  push_segment(segs, c, -sgn * J, a_pk / J);
}

}  // namespace

MotionProfile MotionProfile::speed_tracking(double t0, double p0, double v0, double a0,
                                            const Params& params) {
  const double J = params.J_max;
  const double Vf = params.Vf;
  MotionProfile mp;
  mp.t_start_ = t0;
  Cursor c{t0, p0, v0, a0};

  // Speed reached if the current acceleration is simply ramped out.
  double v_land = v0 + a0 * std::abs(a0) / (2.0 * J);
  const double tol = 1e-12;

  if (std::abs(a0) > tol &&
      ((a0 > 0 && v_land > Vf + tol) || (a0 < 0 && v_land < Vf - tol))) {
    // Momentum carries the speed past Vf; shed the acceleration first, then
    // come back from the far side.
    push_segment(mp.segs_, c, a0 > 0 ? -J : J, std::abs(a0) / J);
    plan_toward(mp.segs_, c, Vf, c.v < Vf ? 1.0 : -1.0,
                c.v < Vf ? params.a_max : -params.a_min, J);
  } else if (std::abs(v_land - Vf) > tol) {
    plan_toward(mp.segs_, c, Vf, v_land < Vf ? 1.0 : -1.0,
                v_land < Vf ? params.a_max : -params.a_min, J);
  } else if (std::abs(a0) > tol) {
    // Exactly lands on Vf with one ramp.
    push_segment(mp.segs_, c, a0 > 0 ? -J : J, std::abs(a0) / J);
  }

  c.v = Vf;  // absorb rounding in the terminal state
  c.a = 0.0;
  mp.t_end_ = c.t;
  mp.p_end_ = c.p;
  mp.v_end_ = Vf;
  return mp;
}

MotionProfile MotionProfile::constant(double t0, double p0, double v) {
  MotionProfile mp;
  mp.t_start_ = t0;
  mp.t_end_ = t0;
  mp.p_end_ = p0;
  mp.v_end_ = v;
  return mp;
}

double MotionProfile::pos(double t) const {
  if (t >= t_end_) return p_end_ + v_end_ * (t - t_end_);
  for (const auto& s : segs_) {
    if (t <= s.t0 + s.dt) {
      double dt = std::max(0.0, t - s.t0);
      return s.p0 + s.v0 * dt + 0.5 * s.a0 * dt * dt + s.j * dt * dt * dt / 6.0;
    }
  }
  return p_end_;
}

double MotionProfile::vel(double t) const {
  if (t >= t_end_) return v_end_;
  for (const auto& s : segs_) {
    if (t <= s.t0 + s.dt) {
      double dt = std::max(0.0, t - s.t0);
      return s.v0 + s.a0 * dt + 0.5 * s.j * dt * dt;
    }
  }
  return v_end_;
}

double MotionProfile::acc(double t) const {
  if (t >= t_end_) return 0.0;
  for (const auto& s : segs_) {
    if (t <= s.t0 + s.dt) {
      double dt = std::max(0.0, t - s.t0);
      return s.a0 + s.j * dt;
    }
  }
  return 0.0;
}

double MotionProfile::time_at_pos(double p) const {
  if (p <= pos(t_start_)) return t_start_;
  if (p >= p_end_) {
    if (v_end_ <= 0) throw std::domain_error("position never reached");
    return t_end_ + (p - p_end_) / v_end_;
  }
  double lo = t_start_, hi = t_end_;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++i) {
    double mid = 0.5 * (lo + hi);
    if (pos(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rampsim
