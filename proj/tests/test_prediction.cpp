#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rampsim/controller.hpp"
#include "rampsim/prediction.hpp"
#include "rampsim/profile.hpp"
#include "rampsim/rng.hpp"

using namespace rampsim;

namespace {
TrackState cruising(int id, double x, double v) {
  TrackState t;
  t.id = id;
  t.t = 0;
  t.x = x;
  t.v = v;
  t.speed_tracking = false;
  return t;
}
}  // namespace

TEST_CASE("virtual neighbor selection for a mainline vehicle approaching a merge") {
  Params p;
  // ego (id 3) 70 m upstream of the merge point, four other vehicles around
  // it, everyone at free-flow speed
  auto ego_profile = MotionProfile::constant(0, -70.0, p.Vf);
  TrackState ego;
  ego.id = 3;
  ego.t = 0;
  ego.x = -70.0;
  ego.v = p.Vf;
  ego.speed_tracking = true;
  ego.profile = &ego_profile;

  std::vector<TrackState> cand{cruising(1, -5.0, p.Vf), cruising(2, -36.0, p.Vf),
                               cruising(4, -101.0, p.Vf), cruising(5, -132.0, p.Vf)};

  auto vn = assign_virtual_leader(ego, 0.0, cand, p);
  CHECK(std::abs(vn.t_cross - 4.67) <= 0.01);
  CHECK(vn.t_cross == doctest::Approx(70.0 / 15.0).epsilon(1e-9));
  CHECK(vn.leader_id == 2);
  CHECK(vn.follower_id == 4);
  CHECK(vn.leader_gap == doctest::Approx(29.5).epsilon(1e-9));
  CHECK(vn.leader_gap >= safety_distance(p.Vf, p.Vf, p));
  CHECK(safety_distance(p.Vf, p.Vf, p) == doctest::Approx(26.5).epsilon(1e-12));
  CHECK(vn.follower_gap == doctest::Approx(26.5).epsilon(1e-9));
}

TEST_CASE("crossing-time prediction per drive mode") {
  Params p;
  TrackState stopped = cruising(1, -30, 0.0);
  CHECK(predict_crossing_time(stopped, 0.0) == kNever);

  TrackState steady = cruising(2, -30, 10.0);
  CHECK(predict_crossing_time(steady, 0.0) == doctest::Approx(3.0).epsilon(1e-12));

  auto mp = MotionProfile::speed_tracking(0, -30, 0, 0, p);
  TrackState accel;
  accel.id = 3;
  accel.profile = &mp;
  accel.x = -30;
  accel.v = 0;
  CHECK(mp.pos(predict_crossing_time(accel, 0.0)) == doctest::Approx(0.0).scale(1).epsilon(1e-6));
}

TEST_CASE("vehicles that exit upstream of the horizon are absent") {
  Params p;
  auto ego_profile = MotionProfile::constant(0, -70.0, p.Vf);
  TrackState ego;
  ego.id = 0;
  ego.x = -70;
  ego.v = p.Vf;
  ego.profile = &ego_profile;

  TrackState nearest = cruising(1, -36.0, p.Vf);
  nearest.exit_x = -10.0;  // leaves at an off-ramp before the ego arrives
  std::vector<TrackState> cand{nearest, cruising(2, -5.0, p.Vf)};
  auto vn = assign_virtual_leader(ego, 0.0, cand, p);
  CHECK(vn.leader_id == 2);
}

TEST_CASE("neighbor ordering is consistent on random snapshots") {
  Params p;
  RngStream rng(17, "neighbor-prop");
  for (int trial = 0; trial < 300; ++trial) {
    auto ego_profile = MotionProfile::constant(0, -50.0, p.Vf);
    TrackState ego;
    ego.id = 99;
    ego.x = -50;
    ego.v = p.Vf;
    ego.profile = &ego_profile;

    std::vector<TrackState> cand;
    for (int i = 0; i < 8; ++i) {
      double x = -200 + 400 * rng.next_double();
      double v = 2 + 13 * rng.next_double();
      cand.push_back(cruising(i, x, v));
    }
    auto vn = assign_virtual_leader(ego, 0.0, cand, p);
    if (vn.leader_id >= 0 && vn.follower_id >= 0) {
      // leader strictly downstream of follower at the crossing instant
      auto lead = predict_track(cand[vn.leader_id], vn.t_cross);
      auto foll = predict_track(cand[vn.follower_id], vn.t_cross);
      CHECK(lead.x >= foll.x);
      CHECK(lead.x >= 0.0);
      CHECK(foll.x < 0.0);
    }
  }
}

TEST_CASE("release headway multiples for the benchmark constants") {
  Params p;
  CHECK(merge_headway_multiple(p.Vf, p) == 2);
  CHECK(merge_headway_multiple(5.0, p) == 3);
}

TEST_CASE("headway multiple never drops below adjacent slots and shrinks with speed") {
  Params p;
  int prev = 1000;
  for (int i = 1; i <= 20; ++i) {
    double ms = p.Vf * i / 20.0;
    int k = merge_headway_multiple(ms, p);
    CHECK(k >= 2);
    CHECK(k <= prev);
    prev = k;
  }
  CHECK(prev == 2);
}

TEST_CASE("merge window check accepts the exact-boundary lattice merge") {
  Params p;
  const double tau = p.tau(), pitch = p.pitch();
  MotionProfile rest = MotionProfile::speed_tracking(0, 0, 0, 0, p);
  int n_a = static_cast<int>(std::ceil(rest.end_time() / tau - 1e-9));
  double land_time = n_a * tau;
  double land_pos = rest.pos(land_time);

  TrackState ego;
  ego.id = 0;
  ego.x = 0;
  ego.v = 0;
  ego.profile = &rest;

  TrackState leader = cruising(1, land_pos + pitch - land_time * p.Vf, p.Vf);
  TrackState follower = cruising(2, leader.x - 2 * pitch, p.Vf);
  auto mc = check_merge_window(ego, rest.end_pos(), land_time, {leader, follower}, p);
  CHECK(mc.ok);
  CHECK(std::abs(mc.worst_margin) < 1e-6);

  // any widening requirement kills the boundary merge
  auto mc2 =
      check_merge_window(ego, rest.end_pos(), land_time, {leader, follower}, p, 0.5);
  CHECK_FALSE(mc2.ok);
}

TEST_CASE("a release one period behind an identical release stays safe") {
  // two from-rest plans offset by one release period: the pair must satisfy
  // the spacing rule at every instant, otherwise back-to-back metering would
  // be physically inconsistent
  Params p;
  const double tau = p.tau();
  auto lead = MotionProfile::speed_tracking(0, 0, 0, 0, p);
  auto ego = MotionProfile::speed_tracking(tau, 0, 0, 0, p);
  for (double t = tau; t < ego.end_time() + 2 * tau; t += 0.01) {
    double gap = lead.pos(t) - ego.pos(t) - p.L;
    double need = safety_distance(ego.vel(t), lead.vel(t), p);
    CHECK(gap >= need - 1e-9);
    CHECK(gap > 0.0);
  }
}
