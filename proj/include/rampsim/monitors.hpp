#ifndef RAMPSIM_MONITORS_HPP
#define RAMPSIM_MONITORS_HPP

#include <vector>

#include "rampsim/world.hpp"

namespace rampsim {

// Aggregate discomfort published on the monitor grid.  `xf1` charges
// connected vehicles that are currently regulating a gap instead of tracking
// the free-flow speed; `xf2` charges peak spacing shortfalls (actual and
// predicted-at-merge) accrued since the previous publish.  `xg1`/`xg2` are
// the release-to-exit analogues.
struct MonitorSample {
  double t = 0;
  long step = 0;
  double xf1 = 0, xf2 = 0;
  double xg1 = 0, xg2 = 0;
  std::vector<double> xf_link;  // xf split by the link the vehicle is on
  double xf() const { return xf1 + xf2; }
};

class MonitorBoard {
 public:
  explicit MonitorBoard(const SlotSystem& sys);

  // Capture a leaving vehicle's window records before its storage is
  // recycled; they count toward the next publish.
  void fold_exit(const World& w, int slot);

  // Bill the window and reset every vehicle's rolling records.
  MonitorSample publish(World& w, double t, long step);

  // Instantaneous sums over connected gap-regulating vehicles, used by
  // space-gap release rules between publishes.
  static double tracking_deviation(const World& w);
  static double spacing_deviation(const World& w);

 private:
  int links_;
  std::vector<double> pending_xf2_link_;
};

}  // namespace rampsim

#endif
