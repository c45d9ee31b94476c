#include "rampsim/monitors.hpp"

#include <algorithm>
#include <cmath>

namespace rampsim {

namespace {

// Link attribution: mainline vehicles by arc, ramp vehicles by the link
// their merge point opens.
int link_of_vehicle(const World& w, int slot) {
  const Vehicle& o = w.veh(slot);
  if (o.stage == Stage::mainline) return w.sys().link_of(w.arc_of(slot));
  return o.origin;
}

}  // namespace

MonitorBoard::MonitorBoard(const SlotSystem& sys)
    : links_(sys.m()), pending_xf2_link_(static_cast<size_t>(sys.m()), 0.0) {}

void MonitorBoard::fold_exit(const World& w, int slot) {
  const Vehicle& o = w.veh(slot);
  if (!o.connected) return;
  double add = o.worst_gap_short + o.worst_pred_short;
  if (add <= 0) return;
  int link = o.destination >= 0 ? o.destination : link_of_vehicle(w, slot);
  pending_xf2_link_[static_cast<size_t>(link)] += w.params().w3 * add;
}

MonitorSample MonitorBoard::publish(World& w, double t, long step) {
  const Params& p = w.params();
  MonitorSample s;
  s.t = t;
  s.step = step;
  s.xf_link.assign(static_cast<size_t>(links_), 0.0);

  for (int slot = 0; slot < w.storage_size(); ++slot) {
    Vehicle& o = w.veh(slot);
    if (!o.on_road()) continue;
    if (o.connected) {
      int link = link_of_vehicle(w, slot);
      if (o.mode == DriveMode::safety) {
        double dev = p.w1 * std::abs(o.v - p.Vf) + p.w2 * std::abs(o.a);
        s.xf1 += dev;
        s.xf_link[static_cast<size_t>(link)] += dev;
      }
      if (o.ever_safety) s.xg1 += p.w1 * std::abs(o.v - p.Vf) + p.w2 * std::abs(o.a);

      double window = o.worst_gap_short + o.worst_pred_short;
      if (window > 0) {
        s.xf2 += p.w3 * window;
        s.xf_link[static_cast<size_t>(link)] += p.w3 * window;
      }

      // release-to-exit spacing charge: current shortfall plus the worst
      // still-pending merge prediction
      double cur = 0;
      if (o.stage == Stage::mainline) {
        double gap = w.gap_ahead(slot);
        if (std::isfinite(gap)) {
          double need = safety_distance(o.v, w.veh(w.leader_of(slot)).v, p);
          // rounding dust around an exactly-met requirement is not a shortfall
          if (need - gap > 1e-6) cur = need - gap;
        }
      }
      double pred = (o.stage == Stage::on_ramp && t < o.land_t) ? o.worst_pred_short : 0.0;
      s.xg2 += p.w4 * (cur + pred);
    }
    o.worst_gap_short = 0;
    o.worst_pred_short = 0;
  }

  for (int i = 0; i < links_; ++i) {
    s.xf2 += pending_xf2_link_[static_cast<size_t>(i)];
    s.xf_link[static_cast<size_t>(i)] += pending_xf2_link_[static_cast<size_t>(i)];
    pending_xf2_link_[static_cast<size_t>(i)] = 0;
  }
  return s;
}

double MonitorBoard::tracking_deviation(const World& w) {
  const Params& p = w.params();
  double sum = 0;
  for (int slot = 0; slot < w.storage_size(); ++slot) {
    const Vehicle& o = w.veh(slot);
    if (!o.on_road() || !o.connected || o.mode != DriveMode::safety) continue;
    sum += p.w1 * std::abs(o.v - p.Vf) + p.w2 * std::abs(o.a);
  }
  return sum;
}

double MonitorBoard::spacing_deviation(const World& w) {
  const Params& p = w.params();
  double sum = 0;
  for (int slot = 0; slot < w.storage_size(); ++slot) {
    const Vehicle& o = w.veh(slot);
    if (!o.on_road() || !o.connected || o.mode != DriveMode::safety) continue;
    if (o.stage != Stage::mainline) continue;
    double gap = w.gap_ahead(slot);
    if (!std::isfinite(gap)) continue;
    sum += std::abs(gap - (p.h * o.v + p.S0));
  }
  return sum;
}

}  // namespace rampsim
