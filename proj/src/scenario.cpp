#include "rampsim/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rampsim {

using nlohmann::json;

void Scenario::validate() const {
  geometry.validate();
  params.validate();
  routing.validate();
  int m = geometry.m();
  if (routing.size() != m) throw std::invalid_argument("routing size != ramp count");
  if (static_cast<int>(lambda.size()) != m)
    throw std::invalid_argument("lambda size != ramp count");
  for (double l : lambda)
    if (l < 0 || l > 1) throw std::invalid_argument("lambda outside [0, 1]");
  if (horizon <= 0) throw std::invalid_argument("horizon must be positive");
  if (dt <= 0) throw std::invalid_argument("dt must be positive");
  if (policy.T_cyc < 1 || policy.T_per < 1)
    throw std::invalid_argument("cycle and monitor periods must be >= 1");
  if (policy.penetration < 0 || policy.penetration > 1)
    throw std::invalid_argument("penetration outside [0, 1]");
  if (initial.kind != "empty" && initial.kind != "free-flow-slots" &&
      initial.kind != "congested")
    throw std::invalid_argument("unknown initial kind: " + initial.kind);
  if (metrics.ttt_n < 1) throw std::invalid_argument("ttt_n must be >= 1");
}

namespace {

json geometry_to_json(const Geometry& g) {
  json j;
  j["shape"] = g.shape == Geometry::Shape::ring ? "ring" : "straight";
  j["P"] = g.P;
  j["onramp_pos"] = g.onramp_pos;
  j["offramp_pos"] = g.offramp_pos;
  if (!g.ramp_run.empty()) j["ramp_run"] = g.ramp_run;
  if (!g.merge_speed.empty()) j["merge_speed"] = g.merge_speed;
  return j;
}

Geometry geometry_from_json(const json& j) {
  Geometry g;
  g.shape = j.at("shape").get<std::string>() == "straight" ? Geometry::Shape::straight
                                                           : Geometry::Shape::ring;
  g.P = j.at("P").get<double>();
  g.onramp_pos = j.at("onramp_pos").get<std::vector<double>>();
  g.offramp_pos = j.at("offramp_pos").get<std::vector<double>>();
  if (j.contains("ramp_run")) g.ramp_run = j["ramp_run"].get<std::vector<double>>();
  if (j.contains("merge_speed"))
    g.merge_speed = j["merge_speed"].get<std::vector<double>>();
  return g;
}

json params_to_json(const Params& p) {
  json j;
  j["h"] = p.h;
  j["S0"] = p.S0;
  j["L"] = p.L;
  j["Vf"] = p.Vf;
  j["a_min"] = p.a_min;
  j["a_max"] = p.a_max;
  j["J_max"] = p.J_max;
  j["w"] = {p.w1, p.w2, p.w3, p.w4};
  j["k_p"] = p.k_p;
  j["k_v"] = p.k_v;
  j["hysteresis_margin"] = p.hysteresis_margin;
  return j;
}

Params params_from_json(const json& j) {
  Params p;
  p.h = j.value("h", p.h);
  p.S0 = j.value("S0", p.S0);
  p.L = j.value("L", p.L);
  p.Vf = j.value("Vf", p.Vf);
  p.a_min = j.value("a_min", p.a_min);
  p.a_max = j.value("a_max", p.a_max);
  p.J_max = j.value("J_max", p.J_max);
  if (j.contains("w")) {
    auto w = j["w"].get<std::vector<double>>();
    if (w.size() != 4) throw std::invalid_argument("params.w needs 4 entries");
    p.w1 = w[0];
    p.w2 = w[1];
    p.w3 = w[2];
    p.w4 = w[3];
  }
  p.k_p = j.value("k_p", p.k_p);
  p.k_v = j.value("k_v", p.k_v);
  p.hysteresis_margin = j.value("hysteresis_margin", p.hysteresis_margin);
  return p;
}

json policy_to_json(const PolicyConfig& c) {
  json j;
  j["kind"] = c.kind;
  j["T_cyc"] = c.T_cyc;
  j["T_per"] = c.T_per;
  j["gamma1"] = c.gamma1;
  j["theta2"] = c.theta2;
  j["theta0"] = c.theta0;
  j["beta"] = c.beta;
  j["T_max"] = c.T_max;
  j["kappa1"] = c.kappa1;
  j["kappa2"] = c.kappa2;
  j["K_r"] = c.K_r;
  j["o_hat"] = c.o_hat;
  j["detector_period"] = c.detector_period;
  j["detector_len"] = c.detector_len;
  j["r0"] = c.r0;
  j["penetration"] = c.penetration;
  return j;
}

PolicyConfig policy_from_json(const json& j) {
  PolicyConfig c;
  c.kind = j.value("kind", c.kind);
  c.T_cyc = j.value("T_cyc", c.T_cyc);
  c.T_per = j.value("T_per", c.T_per);
  c.gamma1 = j.value("gamma1", c.gamma1);
  c.theta2 = j.value("theta2", c.theta2);
  c.theta0 = j.value("theta0", c.theta0);
  c.beta = j.value("beta", c.beta);
  c.T_max = j.value("T_max", c.T_max);
  c.kappa1 = j.value("kappa1", c.kappa1);
  c.kappa2 = j.value("kappa2", c.kappa2);
  c.K_r = j.value("K_r", c.K_r);
  c.o_hat = j.value("o_hat", c.o_hat);
  c.detector_period = j.value("detector_period", c.detector_period);
  c.detector_len = j.value("detector_len", c.detector_len);
  c.r0 = j.value("r0", c.r0);
  c.penetration = j.value("penetration", c.penetration);
  return c;
}

json initial_to_json(const InitialConfig& c) {
  json j;
  j["kind"] = c.kind;
  j["n"] = c.n;
  j["v0"] = c.v0;
  j["gap"] = c.gap;
  j["idle_seconds"] = c.idle_seconds;
  return j;
}

InitialConfig initial_from_json(const json& j) {
  InitialConfig c;
  c.kind = j.value("kind", c.kind);
  c.n = j.value("n", c.n);
  c.v0 = j.value("v0", c.v0);
  c.gap = j.value("gap", c.gap);
  c.idle_seconds = j.value("idle_seconds", c.idle_seconds);
  return c;
}

json metrics_to_json(const MetricsConfig& c) {
  json j;
  j["vehicles"] = c.vehicles;
  j["comms"] = c.comms;
  j["ttc"] = c.ttc;
  j["ttc_ramp"] = c.ttc_ramp;
  j["ttc_radius"] = c.ttc_radius;
  j["ttc_stride"] = c.ttc_stride;
  j["ttc_discard_above"] = c.ttc_discard_above;
  j["flow_points"] = c.flow_points;
  j["ttt_n"] = c.ttt_n;
  return j;
}

MetricsConfig metrics_from_json(const json& j) {
  MetricsConfig c;
  c.vehicles = j.value("vehicles", c.vehicles);
  c.comms = j.value("comms", c.comms);
  c.ttc = j.value("ttc", c.ttc);
  c.ttc_ramp = j.value("ttc_ramp", c.ttc_ramp);
  c.ttc_radius = j.value("ttc_radius", c.ttc_radius);
  c.ttc_stride = j.value("ttc_stride", c.ttc_stride);
  c.ttc_discard_above = j.value("ttc_discard_above", c.ttc_discard_above);
  if (j.contains("flow_points"))
    c.flow_points = j["flow_points"].get<std::vector<double>>();
  c.ttt_n = j.value("ttt_n", c.ttt_n);
  return c;
}

}  // namespace

std::string scenario_to_json(const Scenario& sc) {
  json j;
  j["name"] = sc.name;
  j["geometry"] = geometry_to_json(sc.geometry);
  j["params"] = params_to_json(sc.params);
  j["routing"] = sc.routing.R;
  j["lambda"] = sc.lambda;
  j["horizon"] = sc.horizon;
  j["seed"] = sc.seed;
  j["dt"] = sc.dt;
  j["policy"] = policy_to_json(sc.policy);
  j["initial"] = initial_to_json(sc.initial);
  j["metrics"] = metrics_to_json(sc.metrics);
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  json j = json::parse(text);
  Scenario sc;
  sc.name = j.value("name", sc.name);
  sc.geometry = geometry_from_json(j.at("geometry"));
  sc.params = params_from_json(j.value("params", json::object()));
  sc.routing.R = j.at("routing").get<std::vector<std::vector<double>>>();
  sc.lambda = j.at("lambda").get<std::vector<double>>();
  sc.horizon = j.value("horizon", sc.horizon);
  sc.seed = j.value("seed", sc.seed);
  sc.dt = j.value("dt", sc.dt);
  sc.policy = policy_from_json(j.value("policy", json::object()));
  sc.initial = initial_from_json(j.value("initial", json::object()));
  sc.metrics = metrics_from_json(j.value("metrics", json::object()));
  sc.validate();
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open scenario: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return scenario_from_json(buf.str());
}

void save_scenario_file(const std::string& path, const Scenario& sc) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write scenario: " + path);
  f << scenario_to_json(sc);
}

namespace {

// Three-ramp ring used throughout: merges every 620 m, exits halfway
// between, and a routing mix whose heaviest link carries 1.8x the per-ramp
// demand.
Scenario benchmark_base() {
  Scenario sc;
  sc.geometry.shape = Geometry::Shape::ring;
  sc.geometry.P = 1860;
  sc.geometry.onramp_pos = {0, 620, 1240};
  sc.geometry.offramp_pos = {310, 930, 1550};
  sc.geometry.merge_speed = {15, 15, 15};
  sc.routing.R = {{0.2, 0.7, 0.1}, {0.0, 0.8, 0.2}, {0.5, 0.0, 0.5}};
  sc.lambda = {0.455, 0.455, 0.455};
  sc.horizon = 50000;
  sc.seed = 1;
  return sc;
}

}  // namespace

Scenario make_preset(const std::string& name) {
  if (name == "throughput-all-vf") {
    Scenario sc = benchmark_base();
    sc.name = name;
    sc.lambda = {0.5, 0.5, 0.5};
    sc.policy.kind = "greedy";
    sc.horizon = 200000;
    sc.metrics.vehicles = false;
    sc.metrics.comms = false;
    return sc;
  }
  if (name == "throughput-low-merge") {
    Scenario sc = benchmark_base();
    sc.name = name;
    sc.geometry.merge_speed = {15, 5, 15};
    sc.lambda = {0.44, 0.44, 0.44};
    sc.policy.kind = "greedy";
    sc.horizon = 200000;
    sc.metrics.vehicles = false;
    sc.metrics.comms = false;
    return sc;
  }
  if (name == "sweep-tcyc") {
    Scenario sc = benchmark_base();
    sc.name = name;
    sc.geometry.merge_speed = {15, 5, 15};
    sc.policy.kind = "fcq";
    sc.policy.T_cyc = 13;
    sc.metrics.vehicles = false;
    sc.metrics.comms = false;
    return sc;
  }
  if (name == "following-demo") {
    Scenario sc = benchmark_base();
    sc.name = name;
    sc.geometry.merge_speed = {15, 5, 15};
    sc.lambda = {0.3, 0.3, 0.3};
    sc.policy.kind = "greedy";
    sc.horizon = 3000;
    sc.metrics.ttc = true;
    sc.metrics.ttc_ramp = 1;
    return sc;
  }
  if (name == "policy-compare") {
    Scenario sc = benchmark_base();
    sc.name = name;
    sc.geometry.merge_speed = {15, 5, 15};
    sc.policy.kind = "drr";
    sc.policy.T_cyc = 13;
    sc.policy.T_per = 2;
    sc.initial.kind = "congested";
    sc.initial.n = 100;
    sc.initial.v0 = 6.7;
    sc.initial.gap = 14.05;
    sc.metrics.ttc = true;
    sc.metrics.ttc_ramp = 1;
    sc.metrics.ttt_n = 500;
    return sc;
  }
  if (name == "capacity-drop") {
    Scenario sc = benchmark_base();
    sc.name = name;
    sc.geometry.merge_speed = {15, 5, 15};
    sc.policy.kind = "drr";
    sc.policy.T_cyc = 13;
    sc.initial.kind = "free-flow-slots";
    sc.initial.n = 60;
    sc.initial.idle_seconds = 300;
    sc.horizon = 20000;
    sc.metrics.flow_points = {670};  // 50 m past the slow merge
    return sc;
  }
  throw std::invalid_argument("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
  return {"throughput-all-vf", "throughput-low-merge", "sweep-tcyc",
          "following-demo",    "policy-compare",       "capacity-drop"};
}

}  // namespace rampsim
