#ifndef RAMPSIM_PARAMS_HPP
#define RAMPSIM_PARAMS_HPP

#include <stdexcept>

namespace rampsim {

// Physical and controller constants shared by every module.  Distances in
// meters, speeds in m/s, times in seconds.
struct Params {
  double h = 1.5;     // desired time headway
  double S0 = 4.0;    // standstill buffer
  double L = 4.5;     // vehicle length
  double Vf = 15.0;   // free-flow speed
  double a_min = -5.0;
  double a_max = 3.5;
  double J_max = 10.0;

  // monitor weights
  double w1 = 1.0, w2 = 1.0, w3 = 1.0, w4 = 1.0;

  // gap-regulation gains for the following controller
  double k_p = 0.1;
  double k_v = 0.6;
  double hysteresis_margin = 0.5;

  // Duration of one release period: time for a slot to advance one pitch.
  double tau() const { return h + (S0 + L) / Vf; }
  // Front-bumper spacing of consecutive slots.
  double pitch() const { return h * Vf + S0 + L; }
  // Hard cap used by the integrator; transients may overshoot Vf slightly.
  double v_cap() const { return 1.05 * Vf; }

  void validate() const;
};

// Minimum gap (front bumper of follower to rear bumper of leader) that a
// vehicle moving at v_e must keep behind a leader moving at v_l so that it
// can match a worst-case stop by the leader.  May be negative when the
// leader is much faster; callers treat any gap as admissible then.
inline double safety_distance(double v_e, double v_l, const Params& p) {
  return p.h * v_e + p.S0 + (v_e * v_e - v_l * v_l) / (2.0 * -p.a_min);
}

}  // namespace rampsim

#endif
