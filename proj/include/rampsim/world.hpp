#ifndef RAMPSIM_WORLD_HPP
#define RAMPSIM_WORLD_HPP

#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "rampsim/geometry.hpp"
#include "rampsim/prediction.hpp"
#include "rampsim/vehicle.hpp"

namespace rampsim {

// Thrown when the physical state becomes inconsistent (overlapping vehicles,
// broken ordering, conservation mismatch).  Carries a human-readable dump.
struct SimAbort : std::runtime_error {
  explicit SimAbort(const std::string& what) : std::runtime_error(what) {}
};

struct QueueEntry {
  long id = -1;
  double t_arrival = 0;
  int destination = 0;
  bool connected = true;
};

// Road state container: vehicle storage, the mainline follower ordering, the
// per-ramp acceleration lanes and the meter queues.  Geometric queries live
// here; time stepping and control decisions live in the engine.
class World {
 public:
  explicit World(const SlotSystem& sys);

  const SlotSystem& sys() const { return sys_; }
  const Params& params() const { return sys_.params; }
  bool ring() const { return sys_.shape == Geometry::Shape::ring; }
  int m() const { return sys_.m(); }

  Vehicle& veh(int slot) { return vehicles_[static_cast<size_t>(slot)]; }
  const Vehicle& veh(int slot) const { return vehicles_[static_cast<size_t>(slot)]; }
  int storage_size() const { return static_cast<int>(vehicles_.size()); }

  // Mainline vehicle placed directly (initial conditions).  Callers seed in
  // decreasing-arc order or rely on insertion by arc; both work.
  int seed_mainline(double t, double arc, double v, DriveMode mode, int dest, long id);
  // New vehicle at the meter line of `ramp`, from rest, speed-tracking.
  int spawn_on_ramp(int ramp, double t, int dest, long id, bool connected);
  // Ramp vehicle that reached the merge line joins the mainline ordering.
  void merge_into_mainline(int slot, double t);
  void remove_exited(int slot, double t);
  // Return an exited vehicle's storage to the free pool (after the caller
  // has copied whatever it wants into the trace).
  void recycle(int slot);
  // Re-aim a circulating vehicle at its stored destination off-ramp.
  void retarget_exit(int slot);

  double arc_of(int slot) const { return sys_.wrap(veh(slot).x); }
  // Signed arc from `from` to `to`, in (-P/2, P/2] on a ring.
  double signed_offset(double from_arc, double to_arc) const;
  // Physical gap (front bumper to rear bumper) to the mainline leader.
  // Single vehicle on a ring sees P - L; a straight-road head sees +inf.
  double gap_ahead(int slot) const;
  int leader_of(int slot) const { return veh(slot).ahead; }
  int follower_of(int slot) const { return veh(slot).behind; }
  // Mainline vehicle whose arc is nearest strictly upstream of `arc`.
  int nearest_upstream(double arc) const;
  // Mainline vehicle nearest at-or-downstream of `arc`.
  int nearest_downstream(double arc) const;

  const std::vector<int>& ramp_lane(int ramp) const {
    return lanes_[static_cast<size_t>(ramp)];
  }
  std::deque<QueueEntry>& queue(int ramp) { return queues_[static_cast<size_t>(ramp)]; }
  const std::deque<QueueEntry>& queue(int ramp) const {
    return queues_[static_cast<size_t>(ramp)];
  }
  std::vector<int> queue_lengths() const;

  // Storage slots of road vehicles in ascending slot order: deterministic
  // iteration for monitor sums regardless of insertion history.
  std::vector<int> road_slots() const;
  std::vector<int> mainline_slots() const;

  int mainline_count() const { return mainline_n_; }
  int lane_count() const;
  int on_road_count() const { return mainline_n_ + lane_count(); }
  long exited_count() const { return exited_n_; }
  long seeded_count() const { return seeded_n_; }
  long arrival_count() const { return arrived_n_; }
  void note_arrival() { ++arrived_n_; }

  // Prediction tracks for a merge at `ramp`, on an axis with origin at the
  // merge point.  Pre-merge vehicles of every ramp are projected onto the
  // mainline through their own merge points.
  std::vector<TrackState> merge_candidates(int ramp, double t, bool connected_only,
                                           int exclude_slot = -1) const;

  // Total vehicle length inside the arc window [a0, a0 + len).
  double occupied_length(double a0, double len) const;

  // Every road vehicle is either cruising at Vf on a finished plan or will
  // provably end up there without outside interference.
  bool all_free_flow(double t) const;

  // Distance from the arc of `slot` to the nearest lattice line, at time t.
  double slot_misalignment(int slot, double t) const;

  // Ordering and overlap invariants; throws SimAbort with a state dump.
  void check_physical(double t) const;
  void check_conservation() const;

  std::string dump_state(double t) const;

 private:
  int alloc_slot();
  void link_between(int slot, int lead, int follow);
  void unlink(int slot);

  SlotSystem sys_;
  std::vector<Vehicle> vehicles_;
  std::vector<int> free_;
  std::vector<std::vector<int>> lanes_;
  std::vector<std::deque<QueueEntry>> queues_;
  int any_ = -1;  // some mainline slot, -1 when the mainline is empty
  int mainline_n_ = 0;
  long exited_n_ = 0, seeded_n_ = 0, arrived_n_ = 0;
};

}  // namespace rampsim

#endif
