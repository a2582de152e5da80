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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "riskmpc/solver.hpp"

using namespace riskmpc;

namespace
{

OcpProblem base_problem(int N)
{
  OcpProblem p;
  p.horizon_N = N;
  p.initial_state = {0.0, 1.75, 0.0, 10.0};
  p.vehicle.wheelbase_L = 2.7;
  p.vehicle.ts = 0.75;
  p.vehicle.input_bounds.delta = {-0.1, 0.1};
  p.vehicle.input_bounds.a = {-4.0, 0.5};
  p.reference = build_reference(p.initial_state, 1.75, 10.0, N, 0.75);
  return p;
}

SolverConfig tight_config()
{
  SolverConfig c;
  c.max_iterations = 500;
  c.grad_tolerance = 1e-10;
  c.time_budget_s = 10.0;
  return c;
}

}  // namespace

TEST_CASE("velocity-tracking quadratic matches the closed-form minimizer")
{
  // Only v is weighted, so the objective reduces to
  //   r * sum a_k^2 + m * (v0 + ts * sum a_k - v_ref)^2
  // whose unconstrained minimizer is a_k = -m ts (v0 - v_ref) / (r + m ts^2 N).
  const int N = 5;
  OcpProblem p = base_problem(N);
  p.initial_state.v = 8.0;
  const double v_ref = 9.0;
  const double m = 50.0;
  const double r = 100.0;
  p.weights.input_weight = {1.0, r};
  p.weights.terminal_weight = {0.0, 0.0, 0.0, m};
  p.reference.v = v_ref;
  const double ts = p.vehicle.ts;
  const double expected = -m * ts * (p.initial_state.v - v_ref) / (r + m * ts * ts * N);
  REQUIRE(expected > -4.0);
  REQUIRE(expected < 0.5);

  auto [sol, report] = solve(p, tight_config());
  for (const auto & u : sol.inputs) {
    CHECK(std::abs(u.a - expected) < 1e-6);
    CHECK(std::abs(u.delta) < 1e-6);
  }
  CHECK(report.status == SolveStatus::converged);
}

TEST_CASE("an already optimal warm start converges immediately and unchanged")
{
  const int N = 5;
  OcpProblem p = base_problem(N);
  p.weights.terminal_weight = {0.0, 0.0, 0.0, 50.0};
  // reference equals the coasting terminal state -> zero inputs are optimal
  p.reference.v = p.initial_state.v;
  std::vector<ControlInput> warm(N, ControlInput{0.0, 0.0});
  auto [sol, report] = solve(p, tight_config(), warm);
  CHECK(report.iterations <= 2);
  for (const auto & u : sol.inputs) {
    CHECK(u.delta == 0.0);
    CHECK(u.a == 0.0);
  }
}

TEST_CASE("two-step acceleration-only problem matches a brute-force grid")
{
  const int N = 2;
  OcpProblem p = base_problem(N);
  p.vehicle.input_bounds.delta = {0.0, 0.0};  // pin steering; only (a0, a1) free
  p.initial_state.v = 6.0;
  p.weights.input_weight = {1.0, 2.0};
  p.weights.terminal_weight = {0.5, 0.0, 0.0, 30.0};
  p.reference = build_reference(p.initial_state, 1.75, 8.0, N, p.vehicle.ts);
  // a risk bump ahead makes the problem non-quadratic
  p.lines = {LaneLine{1.75, 0.0, 0.0, 0.0, std::nullopt}};
  p.infra = {40.0, 1.3};
  p.objects.push_back({std::vector<ObjectState>(N + 1, ObjectState{9.0, 1.75, 0.0}),
                       {300.0, 3.0, 1.3}});

  double best = std::numeric_limits<double>::infinity();
  double best_a0 = 0.0;
  double best_a1 = 0.0;
  std::vector<ControlInput> u(2);
  for (double a0 = -4.0; a0 <= 0.5 + 1e-12; a0 += 1e-3) {
    for (double a1 = -4.0; a1 <= 0.5 + 1e-12; a1 += 1e-3) {
      u[0] = {0.0, a0};
      u[1] = {0.0, a1};
      const double f = objective(p, u);
      if (f < best) {
        best = f;
        best_a0 = a0;
        best_a1 = a1;
      }
    }
  }

  auto [sol, report] = solve(p, tight_config());
  CHECK(std::abs(sol.inputs[0].a - best_a0) <= 1e-3);
  CHECK(std::abs(sol.inputs[1].a - best_a1) <= 1e-3);
  CHECK(sol.cost <= best + 1e-9);
}

TEST_CASE("shift_warm_start drops the applied input and repeats the last")
{
  std::vector<ControlInput> u{{0.01, -1.0}, {0.02, -2.0}, {0.03, -3.0}};
  auto s = shift_warm_start(u);
  REQUIRE(s.size() == 3);
  CHECK(s[0].delta == 0.02);
  CHECK(s[0].a == -2.0);
  CHECK(s[1].delta == 0.03);
  CHECK(s[1].a == -3.0);
  CHECK(s[2].delta == 0.03);
  CHECK(s[2].a == -3.0);

  std::vector<ControlInput> constant(4, ControlInput{0.05, -0.5});
  auto sc = shift_warm_start(constant);
  for (const auto & ui : sc) {
    CHECK(ui.delta == 0.05);
    CHECK(ui.a == -0.5);
  }
}

TEST_CASE("cost trace is monotone and inputs stay inside the box")
{
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> dy(0.5, 9.0);
  std::uniform_real_distribution<double> dx(10.0, 60.0);

  for (int i = 0; i < 20; ++i) {
    OcpProblem p = base_problem(10);
    p.weights.terminal_weight = {1.0, 20.0, 0.0, 0.0};
    p.vehicle.state_bounds.y = {1.0, 9.5};
    p.vehicle.state_bounds.v = {0.0, 10.0};
    p.lines = {LaneLine{0.0, 0.0, 0.0, 0.0, std::nullopt},
               LaneLine{3.5, 0.0, 0.0, 0.0, std::nullopt}};
    p.infra = {100.0, 1.3};
    p.objects.push_back({std::vector<ObjectState>(11, ObjectState{dx(rng), dy(rng), 0.0}),
                         {1000.0, 20.0, 1.3}});

    SolverConfig c;
    c.time_budget_s = 0.75;
    auto [sol, report] = solve(p, c);

    REQUIRE(!report.cost_trace.empty());
    for (std::size_t k = 1; k < report.cost_trace.size(); ++k) {
      CHECK(report.cost_trace[k] <= report.cost_trace[k - 1] + 1e-12);
    }
    for (const auto & u : sol.inputs) {
      CHECK(u.delta >= -0.1);
      CHECK(u.delta <= 0.1);
      CHECK(u.a >= -4.0);
      CHECK(u.a <= 0.5);
    }
    // solution states are the exact rollout of the inputs
    auto traj = rollout(p.initial_state, sol.inputs, p.vehicle);
    REQUIRE(traj.size() == sol.states.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
      CHECK(traj[k].x == sol.states[k].x);
      CHECK(traj[k].v == sol.states[k].v);
    }
  }
}

TEST_CASE("a warm start outside the box is projected onto it")
{
  OcpProblem p = base_problem(4);
  p.weights.terminal_weight = {0.0, 0.0, 0.0, 1.0};
  std::vector<ControlInput> warm(4, ControlInput{0.5, -10.0});
  auto [sol, report] = solve(p, tight_config(), warm);
  for (const auto & u : sol.inputs) {
    CHECK(u.delta <= 0.1);
    CHECK(u.a >= -4.0);
  }
}

TEST_CASE("solves are bit-reproducible")
{
  OcpProblem p = base_problem(10);
  p.weights.terminal_weight = {1.0, 20.0, 0.0, 0.0};
  p.lines = {LaneLine{0.0, 0.0, 0.0, 0.0, std::nullopt}};
  p.infra = {100.0, 1.3};
  p.objects.push_back({std::vector<ObjectState>(11, ObjectState{35.0, 1.75, 0.0}),
                       {1000.0, 20.0, 1.3}});
  SolverConfig c;
  c.time_budget_s = 10.0;

  auto [sol_a, rep_a] = solve(p, c);
  auto [sol_b, rep_b] = solve(p, c);
  CHECK(rep_a.iterations == rep_b.iterations);
  REQUIRE(sol_a.inputs.size() == sol_b.inputs.size());
  for (std::size_t k = 0; k < sol_a.inputs.size(); ++k) {
    CHECK(sol_a.inputs[k].delta == sol_b.inputs[k].delta);
    CHECK(sol_a.inputs[k].a == sol_b.inputs[k].a);
  }
  CHECK(sol_a.cost == sol_b.cost);
  REQUIRE(rep_a.cost_trace.size() == rep_b.cost_trace.size());
  for (std::size_t k = 0; k < rep_a.cost_trace.size(); ++k) {
    CHECK(rep_a.cost_trace[k] == rep_b.cost_trace[k]);
  }
}

TEST_CASE("the returned point is first-order stationary within the box")
{
  OcpProblem p = base_problem(10);
  p.weights.terminal_weight = {1.0, 20.0, 0.0, 0.0};
  p.lines = {LaneLine{0.0, 0.0, 0.0, 0.0, std::nullopt},
             LaneLine{3.5, 0.0, 0.0, 0.0, std::nullopt}};
  p.infra = {100.0, 1.3};
  p.objects.push_back({std::vector<ObjectState>(11, ObjectState{40.0, 5.25, 0.0}),
                       {1000.0, 20.0, 1.3}});
  SolverConfig c;
  c.max_iterations = 3000;
  c.grad_tolerance = 1e-6;
  c.time_budget_s = 30.0;
  auto [sol, report] = solve(p, c);
  REQUIRE(report.status == SolveStatus::converged);

  // recompute the projected gradient independently of the solver's report:
  // interior coordinates need a vanishing gradient, active bounds only need
  // the gradient to point out of the box
  const auto g = cost_gradient(p, sol.inputs);
  std::vector<double> lo, hi;
  input_bounds(p, lo, hi);
  std::vector<double> flat;
  for (const auto & u : sol.inputs) {
    flat.push_back(u.delta);
    flat.push_back(u.a);
  }
  double pg = 0.0;
  for (std::size_t k = 0; k < flat.size(); ++k) {
    pg = std::max(pg, std::abs(flat[k] - std::clamp(flat[k] - g[k], lo[k], hi[k])));
  }
  // the solver may also declare convergence when the line search stalls, so
  // allow slack beyond the gradient tolerance itself
  CHECK(pg <= 1e-3);
  CHECK(pg == report.final_projected_grad_norm);
}

TEST_CASE("a tiny time budget still returns a usable trajectory")
{
  OcpProblem p = base_problem(10);
  p.weights.terminal_weight = {1.0, 20.0, 0.0, 0.0};
  p.objects.push_back({std::vector<ObjectState>(11, ObjectState{30.0, 1.75, 0.0}),
                       {1000.0, 20.0, 1.3}});
  SolverConfig c;
  c.time_budget_s = 1e-9;
  std::vector<ControlInput> zero(10, ControlInput{0.0, 0.0});
  auto [sol, report] = solve(p, c);
  CHECK(sol.cost <= objective(p, zero) + 1e-12);
  CHECK((report.status == SolveStatus::time_limit || report.status == SolveStatus::converged));
}

TEST_CASE("solver config validation and status names")
{
  SolverConfig c;
  CHECK(c.valid());
  c.ls_shrink = 1.0;
  CHECK_FALSE(c.valid());
  CHECK(std::string(to_string(SolveStatus::converged)) == "converged");
  CHECK(std::string(to_string(SolveStatus::iteration_limit)) == "iteration_limit");
  CHECK(std::string(to_string(SolveStatus::time_limit)) == "time_limit");
}
