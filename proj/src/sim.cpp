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

#include "riskmpc/sim.hpp"

#include <cmath>
#include <algorithm>
#include <optional>
#include <stdexcept>

namespace riskmpc
{

ObjectState ObjectTrack::pose_at(double t) const
{
  ObjectState s = initial;
  s.x += t * speed * std::cos(initial.theta);
  s.y += t * speed * std::sin(initial.theta);
  return s;
}

std::vector<ObjectState> predict_object(const ObjectTrack & track, double t_now, int N,
                                        double ts)
{
  std::vector<ObjectState> states;
  states.reserve(static_cast<std::size_t>(N) + 1);
  const ObjectState now = track.pose_at(t_now);
  const double vx = track.speed * std::cos(track.initial.theta);
  const double vy = track.speed * std::sin(track.initial.theta);
  for (int k = 0; k <= N; ++k) {
    ObjectState s = now;
    s.x += static_cast<double>(k) * ts * vx;
    s.y += static_cast<double>(k) * ts * vy;
    states.push_back(s);
  }
  return states;
}

std::vector<std::size_t> visible_objects(const Scenario & scenario, double t_now)
{
  std::vector<std::size_t> visible;
  for (std::size_t i = 0; i < scenario.objects.size(); ++i) {
    if (scenario.objects[i].detection_time <= t_now) {
      visible.push_back(i);
    }
  }
  return visible;
}

namespace
{

bool finite(const VehicleState & s)
{
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.theta) &&
         std::isfinite(s.v);
}

}  // namespace

SimLog run(const Scenario & scenario)
{
  if (scenario.duration <= 0.0 || scenario.lane_centers_y.empty()) {
    throw std::invalid_argument("run: invalid scenario");
  }
  const int N = scenario.mpc.horizon_N;
  const double ts = scenario.mpc.ts;
  const auto ticks = static_cast<std::size_t>(std::ceil(scenario.duration / ts));

  SimLog log;
  log.ticks.reserve(ticks);
  VehicleState ego = scenario.ego_initial;
  std::optional<std::vector<ControlInput>> warm;

  VehicleParams vehicle = scenario.vehicle;
  vehicle.ts = ts;

  for (std::size_t j = 0; j < ticks; ++j) {
    const double t = static_cast<double>(j) * ts;

    OcpProblem problem;
    problem.horizon_N = N;
    problem.initial_state = ego;
    problem.reference = build_reference(ego, scenario.rightmost_center_y(), scenario.v_bar, N, ts);
    problem.weights = scenario.mpc.weights;
    problem.vehicle = vehicle;
    problem.lines = scenario.lanes;
    problem.infra = scenario.infra;
    problem.penalty_weight = scenario.mpc.penalty_weight;

    const auto visible = visible_objects(scenario, t);
    std::vector<ObjectRisk> visible_now;
    for (std::size_t idx : visible) {
      const auto & track = scenario.objects[idx];
      problem.objects.push_back({predict_object(track, t, N, ts), track.risk});
      visible_now.push_back({track.pose_at(t), track.risk});
    }

    auto [solution, report] = solve(problem, scenario.mpc.solver, warm);
    if (!finite(solution.states[1])) {
      throw std::runtime_error("run: solver returned non-finite state at t=" +
                               std::to_string(t));
    }

    TickRecord rec;
    rec.t = t;
    rec.ego = ego;
    rec.applied = solution.inputs[0];
    rec.plan = solution.states;
    rec.report = std::move(report);
    for (const auto & track : scenario.objects) {
      const ObjectState pose = track.pose_at(t);
      rec.object_distances.push_back(std::hypot(ego.x - pose.x, ego.y - pose.y));
    }
    const Vec2 pos{ego.x, ego.y};
    rec.infra_risk_at_ego = infra_risk(pos, scenario.lanes, scenario.infra);
    rec.object_risk_at_ego = object_risk(pos, visible_now);
    log.ticks.push_back(std::move(rec));

    ego = solution.states[1];  // perfect tracking
    warm = shift_warm_start(solution.inputs);
  }
  return log;
}

Metrics metrics(const SimLog & log, const Scenario & scenario)
{
  if (log.ticks.empty()) {
    throw std::invalid_argument("metrics: empty log");
  }
  Metrics m;
  m.min_object_distance = std::numeric_limits<double>::infinity();
  m.min_speed = std::numeric_limits<double>::infinity();

  double sum = 0.0;
  for (const auto & rec : log.ticks) {
    sum += rec.report.wall_time_s;
    m.min_speed = std::min(m.min_speed, rec.ego.v);
    for (double d : rec.object_distances) {
      m.min_object_distance = std::min(m.min_object_distance, d);
    }
    const auto & sb = scenario.vehicle.state_bounds;
    const auto violation = [](const Bounds & b, double v) {
      return std::max({0.0, b.lo - v, v - b.hi});
    };
    m.max_bound_violation =
      std::max({m.max_bound_violation, violation(sb.x, rec.ego.x), violation(sb.y, rec.ego.y),
                violation(sb.theta, rec.ego.theta), violation(sb.v, rec.ego.v)});
  }
  m.mean_solve_time_s = sum / static_cast<double>(log.ticks.size());
  double var = 0.0;
  for (const auto & rec : log.ticks) {
    const double d = rec.report.wall_time_s - m.mean_solve_time_s;
    var += d * d;
  }
  m.std_solve_time_s = std::sqrt(var / static_cast<double>(log.ticks.size()));
  m.terminal_lateral_error = std::abs(log.ticks.back().ego.y - scenario.rightmost_center_y());
  return m;
}

}  // namespace riskmpc
