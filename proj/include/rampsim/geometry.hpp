#ifndef RAMPSIM_GEOMETRY_HPP
#define RAMPSIM_GEOMETRY_HPP

#include <string>
#include <vector>

#include "rampsim/params.hpp"
#include "rampsim/profile.hpp"

namespace rampsim {

// Requested road layout.  Arc positions are measured along the travel
// direction from an arbitrary origin; on a ring they wrap at P.
struct Geometry {
  enum class Shape { ring, straight };
  Shape shape = Shape::ring;
  double P = 1860.0;
  std::vector<double> onramp_pos;   // merge point of each ramp
  std::vector<double> offramp_pos;  // one off-ramp per on-ramp, same indexing
  // Either give the meter-to-merge distance directly or a target merge
  // speed per ramp ("ramp_run" wins when both are present).
  std::vector<double> ramp_run;
  std::vector<double> merge_speed;

  int m() const { return static_cast<int>(onramp_pos.size()); }
  void validate() const;
};

struct RampLayout {
  double merge_arc = 0;     // resolved arc of the merge point
  double ramp_run = 0;      // resolved meter-to-merge distance
  double merge_speed = 0;   // speed of the release profile at the merge point
  double t_merge = 0;       // release-to-merge travel time
  double land_offset = 0;   // merge point to landing point, along the path
  double land_arc = 0;      // arc where released vehicles join the lattice
};

// Resolved discretization of a scenario.  Mainline slots travel at Vf with
// front-bumper spacing `pitch`; at every release instant the lattice
// occupies the arcs {anchor + l * pitch mod P}.  Every ramp's landing point
// sits on that lattice, which the resolver enforces by nudging ramp_run by
// less than half a pitch where needed (reported in `notes`).
struct SlotSystem {
  Params params;
  Geometry::Shape shape = Geometry::Shape::ring;
  double pitch = 0, tau = 0;
  int n_c = 0;
  double P = 0;        // snapped to n_c * pitch
  double anchor = 0;   // lattice residue at release instants
  int n_a = 0;         // slots of each acceleration lane
  double profile_time = 0;  // from-rest time to reach Vf
  double profile_dist = 0;  // from-rest distance to reach Vf
  double land_time = 0;     // n_a * tau
  double land_dist = 0;     // from-rest distance covered by land_time
  std::vector<RampLayout> ramps;
  std::vector<double> offramp_arc;
  std::vector<std::string> notes;

  int m() const { return static_cast<int>(ramps.size()); }
  // Unwrapped position of lattice line l at absolute time t.
  double slot_pos(long l, double t) const {
    return anchor + static_cast<double>(l) * pitch + params.Vf * t;
  }
  double wrap(double x) const;
  // Signed arc from a to b going forward, in [0, P).
  double forward_arc(double a, double b) const;
  // index of the link (section from on-ramp j to on-ramp j+1) containing arc x
  int link_of(double arc) const;
};

int slot_capacity(double P, double pitch);

SlotSystem build_slot_system(const Geometry& geom, const Params& params);

}  // namespace rampsim

#endif
