#include "rampsim/trace.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rampsim {

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);  // binary: no platform EOL games
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

}  // namespace

void write_queues_csv(const std::string& path, const Trace& tr) {
  auto f = open_out(path);
  f << "step";
  for (int i = 0; i < tr.m; ++i) f << ",Q_" << (i + 1);
  f << "\n";
  for (size_t s = 0; s < tr.queues.size(); ++s) {
    f << s;
    for (int q : tr.queues[s]) f << ',' << q;
    f << "\n";
  }
}

void write_vehicles_csv(const std::string& path, const Trace& tr) {
  auto f = open_out(path);
  f << "id,origin,dest,connected,t_arr,t_rel,t_merge,t_exit\n";
  for (const auto& v : tr.vehicles) {
    f << v.id << ',' << v.origin << ',' << v.destination << ',' << (v.connected ? 1 : 0)
      << ',' << csv_num(v.t_arrival) << ',' << csv_num(v.t_release) << ','
      << csv_num(v.t_merge) << ',' << csv_num(v.t_exit) << "\n";
  }
}

void write_flow_csv(const std::string& path, const Trace& tr) {
  auto f = open_out(path);
  f << "point,step,crossings\n";
  for (size_t p = 0; p < tr.flow.size(); ++p)
    for (size_t s = 0; s < tr.flow[p].size(); ++s)
      f << csv_num(tr.flow_point_arc[p]) << ',' << s << ',' << tr.flow[p][s] << "\n";
}

void write_ttc_csv(const std::string& path, const Trace& tr) {
  auto f = open_out(path);
  f << "time,follower,leader,ttc\n";
  for (const auto& r : tr.ttc)
    f << csv_num(r.t) << ',' << r.follower << ',' << r.leader << ',' << csv_num(r.ttc)
      << "\n";
}

void write_comms_csv(const std::string& path, const Trace& tr, const std::string& policy) {
  auto f = open_out(path);
  f << "step,policy,transmissions,burst\n";
  for (size_t s = 0; s < tr.comms.size(); ++s)
    f << s << ',' << policy << ',' << csv_num(tr.comms[s].state) << ','
      << csv_num(tr.comms[s].burst) << "\n";
}

void write_monitor_csv(const std::string& path, const Trace& tr) {
  auto f = open_out(path);
  f << "t,xf1,xf2,xg1,xg2";
  for (int i = 0; i < tr.m; ++i) f << ",xf_link_" << (i + 1);
  f << "\n";
  for (const auto& s : tr.monitor) {
    f << csv_num(s.t) << ',' << csv_num(s.xf1) << ',' << csv_num(s.xf2) << ','
      << csv_num(s.xg1) << ',' << csv_num(s.xg2);
    for (double v : s.xf_link) f << ',' << csv_num(v);
    f << "\n";
  }
}

}  // namespace rampsim
