// Copyright 2026 The riskmpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "riskmpc/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string_view>

#include "json.hpp"

namespace riskmpc
{

namespace
{

using json = nlohmann::ordered_json;

void check_keys(const json & j, const std::string & section,
                std::initializer_list<std::string_view> allowed)
{
  if (!j.is_object()) {
    throw ScenarioError("section '" + section + "' must be an object");
  }
  for (const auto & [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ScenarioError("unknown key '" + key + "' in section '" + section + "'");
    }
  }
}

const json & require(const json & j, const std::string & section, const char * key)
{
  auto it = j.find(key);
  if (it == j.end()) {
    throw ScenarioError("missing required key '" + std::string(key) + "' in section '" +
                        section + "'");
  }
  return *it;
}

double get_num(const json & j, const std::string & section, const char * key)
{
  const json & v = require(j, section, key);
  if (!v.is_number()) {
    throw ScenarioError("key '" + std::string(key) + "' in section '" + section +
                        "' must be a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw ScenarioError("key '" + std::string(key) + "' in section '" + section +
                        "' must be finite");
  }
  return d;
}

double get_num_or(const json & j, const std::string & section, const char * key,
                  double fallback)
{
  return j.contains(key) ? get_num(j, section, key) : fallback;
}

int get_int(const json & j, const std::string & section, const char * key)
{
  const json & v = require(j, section, key);
  if (!v.is_number_integer()) {
    throw ScenarioError("key '" + std::string(key) + "' in section '" + section +
                        "' must be an integer");
  }
  return v.get<int>();
}

Bounds get_bounds(const json & j, const std::string & section, const char * key)
{
  const json & v = require(j, section, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ScenarioError("key '" + std::string(key) + "' in section '" + section +
                        "' must be a [lo, hi] pair");
  }
  Bounds b{v[0].get<double>(), v[1].get<double>()};
  if (!b.valid()) {
    throw ScenarioError("bound '" + std::string(key) + "' in section '" + section +
                        "' has lo > hi");
  }
  return b;
}

template <std::size_t n>
std::array<double, n> get_weights(const json & j, const std::string & section, const char * key)
{
  const json & v = require(j, section, key);
  if (!v.is_array() || v.size() != n) {
    throw ScenarioError("key '" + std::string(key) + "' in section '" + section + "' must be a " +
                        std::to_string(n) + "-element array");
  }
  std::array<double, n> out{};
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i].is_number()) {
      throw ScenarioError("key '" + std::string(key) + "' must contain numbers");
    }
    out[i] = v[i].get<double>();
    if (out[i] < 0.0) {
      throw ScenarioError("key '" + std::string(key) + "' in section '" + section +
                          "' must be non-negative");
    }
  }
  return out;
}

void append_num(std::string & out, double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

Scenario parse_scenario(const std::string & text)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception & e) {
    throw ScenarioError(std::string("malformed scenario document: ") + e.what());
  }

  check_keys(doc, "<root>",
             {"version", "name", "lanes", "ego", "objects", "mpc", "solver", "vehicle", "bounds",
              "v_bar_mps", "duration_s"});
  if (get_int(doc, "<root>", "version") != 1) {
    throw ScenarioError("unsupported scenario 'version' (expected 1)");
  }

  Scenario sc;
  sc.name = require(doc, "<root>", "name").get<std::string>();

  const json & lanes = require(doc, "<root>", "lanes");
  check_keys(lanes, "lanes",
             {"lines", "amplitude_AI", "sigma_m", "centers_y_m", "rightmost_index"});
  sc.infra.amplitude_AI = get_num(lanes, "lanes", "amplitude_AI");
  sc.infra.sigma = get_num(lanes, "lanes", "sigma_m");
  if (sc.infra.amplitude_AI < 0.0) {
    throw ScenarioError("'amplitude_AI' must be non-negative");
  }
  if (sc.infra.sigma <= 0.0) {
    throw ScenarioError("'sigma_m' must be positive");
  }
  for (const auto & line : require(lanes, "lanes", "lines")) {
    check_keys(line, "lanes.lines[]", {"c0_m", "c1", "c2_per_m", "c3_per_m2", "amplitude"});
    LaneLine ll;
    ll.c0 = get_num(line, "lanes.lines[]", "c0_m");
    ll.c1 = get_num_or(line, "lanes.lines[]", "c1", 0.0);
    ll.c2 = get_num_or(line, "lanes.lines[]", "c2_per_m", 0.0);
    ll.c3 = get_num_or(line, "lanes.lines[]", "c3_per_m2", 0.0);
    if (line.contains("amplitude")) {
      ll.amplitude_override = get_num(line, "lanes.lines[]", "amplitude");
      if (*ll.amplitude_override < 0.0) {
        throw ScenarioError("per-line 'amplitude' must be non-negative");
      }
    }
    sc.lanes.push_back(ll);
  }
  for (const auto & c : require(lanes, "lanes", "centers_y_m")) {
    if (!c.is_number()) {
      throw ScenarioError("'centers_y_m' must contain numbers");
    }
    sc.lane_centers_y.push_back(c.get<double>());
  }
  if (sc.lane_centers_y.empty()) {
    throw ScenarioError("'centers_y_m' must not be empty");
  }
  sc.rightmost_lane = get_int(lanes, "lanes", "rightmost_index");
  if (sc.rightmost_lane < 0 ||
      sc.rightmost_lane >= static_cast<int>(sc.lane_centers_y.size())) {
    throw ScenarioError("'rightmost_index' out of range of 'centers_y_m'");
  }

  const json & ego = require(doc, "<root>", "ego");
  check_keys(ego, "ego", {"x_m", "y_m", "theta_rad", "v_mps"});
  sc.ego_initial = {get_num(ego, "ego", "x_m"), get_num(ego, "ego", "y_m"),
                    get_num(ego, "ego", "theta_rad"), get_num(ego, "ego", "v_mps")};

  for (const auto & obj : require(doc, "<root>", "objects")) {
    check_keys(obj, "objects[]",
               {"x_m", "y_m", "theta_rad", "speed_mps", "amplitude_AO", "sigma_x_m", "sigma_y_m",
                "detection_time_s"});
    ObjectTrack track;
    track.initial = {get_num(obj, "objects[]", "x_m"), get_num(obj, "objects[]", "y_m"),
                     get_num(obj, "objects[]", "theta_rad")};
    track.speed = get_num(obj, "objects[]", "speed_mps");
    track.risk.amplitude_AO = get_num(obj, "objects[]", "amplitude_AO");
    track.risk.sigma_x = get_num(obj, "objects[]", "sigma_x_m");
    track.risk.sigma_y = get_num(obj, "objects[]", "sigma_y_m");
    track.detection_time = get_num_or(obj, "objects[]", "detection_time_s", 0.0);
    if (track.speed < 0.0) {
      throw ScenarioError("'speed_mps' must be non-negative (heading encodes direction)");
    }
    if (track.risk.amplitude_AO < 0.0) {
      throw ScenarioError("'amplitude_AO' must be non-negative");
    }
    if (track.risk.sigma_x <= 0.0 || track.risk.sigma_y <= 0.0) {
      throw ScenarioError("'sigma_x_m' and 'sigma_y_m' must be positive");
    }
    if (track.detection_time < 0.0) {
      throw ScenarioError("'detection_time_s' must be non-negative");
    }
    sc.objects.push_back(track);
  }

  const json & mpc = require(doc, "<root>", "mpc");
  check_keys(mpc, "mpc",
             {"horizon_N", "ts_s", "input_weight", "terminal_weight", "stage_weight",
              "penalty_weight"});
  sc.mpc.horizon_N = get_int(mpc, "mpc", "horizon_N");
  if (sc.mpc.horizon_N < 2) {
    throw ScenarioError("'horizon_N' must be at least 2");
  }
  sc.mpc.ts = get_num(mpc, "mpc", "ts_s");
  if (sc.mpc.ts <= 0.0) {
    throw ScenarioError("'ts_s' must be positive");
  }
  sc.mpc.weights.input_weight = get_weights<2>(mpc, "mpc", "input_weight");
  sc.mpc.weights.terminal_weight = get_weights<4>(mpc, "mpc", "terminal_weight");
  if (mpc.contains("stage_weight")) {
    sc.mpc.weights.stage_weight = get_weights<4>(mpc, "mpc", "stage_weight");
  }
  sc.mpc.penalty_weight = get_num_or(mpc, "mpc", "penalty_weight", 1e4);
  if (sc.mpc.penalty_weight < 0.0) {
    throw ScenarioError("'penalty_weight' must be non-negative");
  }

  sc.mpc.solver.time_budget_s = sc.mpc.ts;
  if (doc.contains("solver")) {
    const json & solver = doc["solver"];
    check_keys(solver, "solver",
               {"max_iterations", "grad_tolerance", "time_budget_s", "line_search_shrink",
                "sufficient_decrease", "warm_start", "lbfgs_memory"});
    if (solver.contains("max_iterations")) {
      sc.mpc.solver.max_iterations = get_int(solver, "solver", "max_iterations");
    }
    sc.mpc.solver.grad_tolerance =
      get_num_or(solver, "solver", "grad_tolerance", sc.mpc.solver.grad_tolerance);
    sc.mpc.solver.time_budget_s =
      get_num_or(solver, "solver", "time_budget_s", sc.mpc.solver.time_budget_s);
    sc.mpc.solver.ls_shrink =
      get_num_or(solver, "solver", "line_search_shrink", sc.mpc.solver.ls_shrink);
    sc.mpc.solver.ls_sufficient_decrease =
      get_num_or(solver, "solver", "sufficient_decrease", sc.mpc.solver.ls_sufficient_decrease);
    if (solver.contains("warm_start")) {
      if (!solver["warm_start"].is_boolean()) {
        throw ScenarioError("'warm_start' must be a boolean");
      }
      sc.mpc.solver.warm_start = solver["warm_start"].get<bool>();
    }
    if (solver.contains("lbfgs_memory")) {
      sc.mpc.solver.lbfgs_memory = get_int(solver, "solver", "lbfgs_memory");
    }
  }
  if (!sc.mpc.solver.valid()) {
    throw ScenarioError("invalid 'solver' configuration");
  }

  sc.vehicle.wheelbase_L = 2.7;
  if (doc.contains("vehicle")) {
    const json & vehicle = doc["vehicle"];
    check_keys(vehicle, "vehicle", {"wheelbase_m"});
    sc.vehicle.wheelbase_L = get_num(vehicle, "vehicle", "wheelbase_m");
  }
  if (sc.vehicle.wheelbase_L <= 0.0) {
    throw ScenarioError("'wheelbase_m' must be positive");
  }
  sc.vehicle.ts = sc.mpc.ts;

  const json & bounds = require(doc, "<root>", "bounds");
  check_keys(bounds, "bounds", {"x_m", "y_m", "theta_rad", "v_mps", "delta_rad", "a_mps2"});
  sc.vehicle.input_bounds.delta = get_bounds(bounds, "bounds", "delta_rad");
  sc.vehicle.input_bounds.a = get_bounds(bounds, "bounds", "a_mps2");
  sc.vehicle.state_bounds.y = get_bounds(bounds, "bounds", "y_m");
  sc.vehicle.state_bounds.v = get_bounds(bounds, "bounds", "v_mps");
  if (bounds.contains("x_m")) {
    sc.vehicle.state_bounds.x = get_bounds(bounds, "bounds", "x_m");
  }
  if (bounds.contains("theta_rad")) {
    sc.vehicle.state_bounds.theta = get_bounds(bounds, "bounds", "theta_rad");
  }

  sc.v_bar = get_num(doc, "<root>", "v_bar_mps");
  if (sc.v_bar <= 0.0) {
    throw ScenarioError("'v_bar_mps' must be positive");
  }
  sc.duration = get_num(doc, "<root>", "duration_s");
  if (sc.duration <= 0.0) {
    throw ScenarioError("'duration_s' must be positive");
  }

  const double rc = sc.rightmost_center_y();
  if (rc < sc.vehicle.state_bounds.y.lo || rc > sc.vehicle.state_bounds.y.hi) {
    throw ScenarioError("rightmost lane center lies outside the 'y_m' bounds");
  }
  return sc;
}

std::string serialize_scenario(const Scenario & sc)
{
  json doc;
  doc["version"] = 1;
  doc["name"] = sc.name;

  json lanes;
  json lines = json::array();
  for (const auto & ll : sc.lanes) {
    json line;
    line["c0_m"] = ll.c0;
    line["c1"] = ll.c1;
    line["c2_per_m"] = ll.c2;
    line["c3_per_m2"] = ll.c3;
    if (ll.amplitude_override) {
      line["amplitude"] = *ll.amplitude_override;
    }
    lines.push_back(line);
  }
  lanes["lines"] = lines;
  lanes["amplitude_AI"] = sc.infra.amplitude_AI;
  lanes["sigma_m"] = sc.infra.sigma;
  lanes["centers_y_m"] = sc.lane_centers_y;
  lanes["rightmost_index"] = sc.rightmost_lane;
  doc["lanes"] = lanes;

  doc["ego"] = {{"x_m", sc.ego_initial.x},
                {"y_m", sc.ego_initial.y},
                {"theta_rad", sc.ego_initial.theta},
                {"v_mps", sc.ego_initial.v}};

  json objects = json::array();
  for (const auto & t : sc.objects) {
    objects.push_back({{"x_m", t.initial.x},
                       {"y_m", t.initial.y},
                       {"theta_rad", t.initial.theta},
                       {"speed_mps", t.speed},
                       {"amplitude_AO", t.risk.amplitude_AO},
                       {"sigma_x_m", t.risk.sigma_x},
                       {"sigma_y_m", t.risk.sigma_y},
                       {"detection_time_s", t.detection_time}});
  }
  doc["objects"] = objects;

  doc["mpc"] = {{"horizon_N", sc.mpc.horizon_N},
                {"ts_s", sc.mpc.ts},
                {"input_weight", sc.mpc.weights.input_weight},
                {"terminal_weight", sc.mpc.weights.terminal_weight},
                {"stage_weight", sc.mpc.weights.stage_weight},
                {"penalty_weight", sc.mpc.penalty_weight}};

  doc["solver"] = {{"max_iterations", sc.mpc.solver.max_iterations},
                   {"grad_tolerance", sc.mpc.solver.grad_tolerance},
                   {"time_budget_s", sc.mpc.solver.time_budget_s},
                   {"line_search_shrink", sc.mpc.solver.ls_shrink},
                   {"sufficient_decrease", sc.mpc.solver.ls_sufficient_decrease},
                   {"warm_start", sc.mpc.solver.warm_start},
                   {"lbfgs_memory", sc.mpc.solver.lbfgs_memory}};

  doc["vehicle"] = {{"wheelbase_m", sc.vehicle.wheelbase_L}};

  json bounds;
  const auto put_bounds = [&](const char * key, const Bounds & b) {
    if (b.bounded()) {
      bounds[key] = {b.lo, b.hi};
    }
  };
  put_bounds("x_m", sc.vehicle.state_bounds.x);
  put_bounds("y_m", sc.vehicle.state_bounds.y);
  put_bounds("theta_rad", sc.vehicle.state_bounds.theta);
  put_bounds("v_mps", sc.vehicle.state_bounds.v);
  bounds["delta_rad"] = {sc.vehicle.input_bounds.delta.lo, sc.vehicle.input_bounds.delta.hi};
  bounds["a_mps2"] = {sc.vehicle.input_bounds.a.lo, sc.vehicle.input_bounds.a.hi};
  doc["bounds"] = bounds;

  doc["v_bar_mps"] = sc.v_bar;
  doc["duration_s"] = sc.duration;
  return doc.dump(2) + "\n";
}

Scenario load_scenario(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("cannot open scenario file: " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_scenario(text);
}

std::string format_log(const SimLog & log, bool zero_wall_times)
{
  std::string out =
    "t_s,x_m,y_m,theta_rad,v_mps,delta_rad,a_mps2,solve_time_s,status,"
    "min_object_dist_m,infra_risk,object_risk\n";
  for (const auto & rec : log.ticks) {
    double min_dist = std::numeric_limits<double>::infinity();
    for (double d : rec.object_distances) {
      min_dist = std::min(min_dist, d);
    }
    append_num(out, rec.t);
    for (double v : {rec.ego.x, rec.ego.y, rec.ego.theta, rec.ego.v, rec.applied.delta,
                     rec.applied.a, zero_wall_times ? 0.0 : rec.report.wall_time_s}) {
      out += ',';
      append_num(out, v);
    }
    out += ',';
    out += to_string(rec.report.status);
    for (double v : {min_dist, rec.infra_risk_at_ego, rec.object_risk_at_ego}) {
      out += ',';
      append_num(out, v);
    }
    out += '\n';
  }
  return out;
}

std::string format_grid(const RiskGrid & grid)
{
  std::string out =
    "# risk raster; row-major, row i is y-index: value(i,j) sampled at "
    "(x0+(j+0.5)dx, y0+(i+0.5)dy)\n";
  append_num(out, grid.x0);
  out += ' ';
  append_num(out, grid.y0);
  out += ' ';
  append_num(out, grid.dx);
  out += ' ';
  append_num(out, grid.dy);
  out += ' ';
  out += std::to_string(grid.nx);
  out += ' ';
  out += std::to_string(grid.ny);
  out += '\n';
  for (std::size_t i = 0; i < grid.ny; ++i) {
    for (std::size_t j = 0; j < grid.nx; ++j) {
      if (j > 0) {
        out += ' ';
      }
      append_num(out, grid.at(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_text_atomic(const std::filesystem::path & path, const std::string & content)
{
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write file: " + tmp.string());
    }
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace riskmpc
