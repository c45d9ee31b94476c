#include "rampsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rampsim {

void Geometry::validate() const {
  if (m() == 0) throw std::invalid_argument("at least one on-ramp required");
  if (offramp_pos.size() != onramp_pos.size())
    throw std::invalid_argument("one off-ramp per on-ramp required");
  if (P <= 0) throw std::invalid_argument("road length must be positive");
  for (double x : onramp_pos)
    if (x < 0 || x >= P) throw std::invalid_argument("on-ramp position out of range");
  for (double x : offramp_pos)
    if (x < 0 || x >= P) throw std::invalid_argument("off-ramp position out of range");
  if (!std::is_sorted(onramp_pos.begin(), onramp_pos.end()))
    throw std::invalid_argument("on-ramps must be listed in travel order");
  if (!ramp_run.empty() && static_cast<int>(ramp_run.size()) != m())
    throw std::invalid_argument("ramp_run must have one entry per ramp");
  if (!merge_speed.empty() && static_cast<int>(merge_speed.size()) != m())
    throw std::invalid_argument("merge_speed must have one entry per ramp");
  if (ramp_run.empty() && merge_speed.empty())
    throw std::invalid_argument("give ramp_run or merge_speed per ramp");
}

double SlotSystem::wrap(double x) const {
  if (shape == Geometry::Shape::straight) return x;
  double r = std::fmod(x, P);
  return r < 0 ? r + P : r;
}

double SlotSystem::forward_arc(double a, double b) const {
  if (shape == Geometry::Shape::straight) return b - a;
  double d = std::fmod(b - a, P);
  return d < 0 ? d + P : d;
}

int SlotSystem::link_of(double arc) const {
  double x = wrap(arc);
  int best = m() - 1;
  // link i starts at on-ramp i; positions before the first ramp belong to
  // the last link (ring wrap)
  for (int i = m() - 1; i >= 0; --i) {
    if (x >= ramps[i].merge_arc) return i;
  }
  return best;
}

int slot_capacity(double P, double pitch) {
  if (P <= 0 || pitch <= 0) throw std::invalid_argument("bad lattice inputs");
  return static_cast<int>(std::floor(P / pitch + 1e-9));
}

SlotSystem build_slot_system(const Geometry& geom, const Params& params) {
  geom.validate();
  params.validate();

  SlotSystem ss;
  ss.params = params;
  ss.shape = geom.shape;
  ss.pitch = params.pitch();
  ss.tau = params.tau();
  ss.n_c = slot_capacity(geom.P, ss.pitch);
  ss.P = ss.n_c * ss.pitch;
  if (std::abs(ss.P - geom.P) > 1e-9) {
    std::ostringstream os;
    os << "road length snapped from " << geom.P << " to " << ss.P;
    ss.notes.push_back(os.str());
  }

  MotionProfile rest = MotionProfile::speed_tracking(0.0, 0.0, 0.0, 0.0, params);
  ss.profile_time = rest.end_time();
  ss.profile_dist = rest.end_pos();
  ss.n_a = static_cast<int>(std::ceil(ss.profile_time / ss.tau - 1e-9));
  ss.land_time = ss.n_a * ss.tau;
  ss.land_dist = rest.pos(ss.land_time);

  const int m = geom.m();
  ss.ramps.resize(m);
  for (int i = 0; i < m; ++i) {
    RampLayout& ramp = ss.ramps[i];
    ramp.merge_arc = geom.onramp_pos[i];
    if (ramp.merge_arc >= ss.P)
      throw std::invalid_argument("on-ramp beyond snapped road length");

    double run;
    if (!geom.ramp_run.empty()) {
      run = geom.ramp_run[i];
    } else {
      double target = geom.merge_speed[i];
      if (target <= 0 || target > params.Vf + 1e-9)
        throw std::invalid_argument("merge speed must lie in (0, Vf]");
      if (target >= params.Vf - 1e-12) {
        run = ss.profile_dist;
      } else {
        // invert the from-rest speed curve
        double lo = 0, hi = ss.profile_time;
        for (int it = 0; it < 200; ++it) {
          double mid = 0.5 * (lo + hi);
          (rest.vel(mid) < target ? lo : hi) = mid;
        }
        run = rest.pos(0.5 * (lo + hi));
      }
    }
    if (run <= 0 || run > ss.profile_dist + 1e-9)
      throw std::invalid_argument("ramp_run must lie in (0, from-rest distance to Vf]");
    run = std::min(run, ss.profile_dist);

    // Align this ramp's landing point with the common lattice.  The landing
    // point is land_dist - run downstream of the merge, so shifting run by
    // d shifts the landing residue by -d.
    double land_res = std::fmod(ramp.merge_arc + ss.land_dist - run, ss.pitch);
    if (land_res < 0) land_res += ss.pitch;
    if (i == 0) {
      ss.anchor = land_res;
    } else {
      double delta = land_res - ss.anchor;
      delta -= ss.pitch * std::round(delta / ss.pitch);
      if (std::abs(delta) > 1e-9) {
        double snapped = run + delta;
        if (snapped > ss.profile_dist) snapped -= ss.pitch;
        if (snapped <= 0)
          throw std::invalid_argument("cannot align ramp landing with slot lattice");
        std::ostringstream os;
        os << "ramp " << i << " run adjusted from " << run << " to " << snapped
           << " to land on the slot lattice";
        ss.notes.push_back(os.str());
        run = snapped;
      }
    }

    ramp.ramp_run = run;
    ramp.t_merge = rest.time_at_pos(run);
    ramp.merge_speed = rest.vel(ramp.t_merge);
    ramp.land_offset = ss.land_dist - run;
    ramp.land_arc = ss.wrap(ramp.merge_arc + ramp.land_offset);
  }

  ss.offramp_arc = geom.offramp_pos;
  for (double& x : ss.offramp_arc) {
    if (x >= ss.P) throw std::invalid_argument("off-ramp beyond snapped road length");
    x = ss.wrap(x);
  }
  return ss;
}

}  // namespace rampsim
