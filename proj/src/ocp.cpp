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

#include "riskmpc/ocp.hpp"

#include <cmath>
#include <stdexcept>

namespace riskmpc
{

namespace
{

std::array<double, 4> state_as_array(const VehicleState & s)
{
  return {s.x, s.y, s.theta, s.v};
}

std::array<Bounds, 4> bounds_as_array(const StateBounds & b)
{
  return {b.x, b.y, b.theta, b.v};
}

std::vector<ObjectRisk> objects_at_step(const OcpProblem & problem, int k)
{
  std::vector<ObjectRisk> out;
  out.reserve(problem.objects.size());
  for (const auto & pred : problem.objects) {
    out.push_back({pred.states[static_cast<std::size_t>(k)], pred.risk});
  }
  return out;
}

void check_inputs(const OcpProblem & problem, std::span<const ControlInput> inputs)
{
  if (static_cast<int>(inputs.size()) != problem.horizon_N) {
    throw std::invalid_argument("ocp: input sequence length does not match horizon");
  }
}

}  // namespace

bool OcpProblem::valid() const
{
  if (horizon_N < 2 || !vehicle.valid() || penalty_weight < 0.0) {
    return false;
  }
  for (const auto & pred : objects) {
    if (static_cast<int>(pred.states.size()) != horizon_N + 1) {
      return false;
    }
  }
  return true;
}

ReferenceState build_reference(const VehicleState & initial, double lane_center_y, double v_bar,
                               int N, double ts)
{
  ReferenceState ref;
  ref.x = initial.x + static_cast<double>(N) * ts * v_bar;
  ref.y = lane_center_y;
  ref.theta = 0.0;
  ref.v = v_bar;
  return ref;
}

std::pair<double, CostBreakdown> total_cost(const OcpProblem & problem,
                                            std::span<const ControlInput> inputs)
{
  check_inputs(problem, inputs);
  const auto states = rollout(problem.initial_state, inputs, problem.vehicle);
  const auto ref = state_as_array(problem.reference);
  const int N = problem.horizon_N;

  CostBreakdown b;
  for (const auto & u : inputs) {
    b.input += problem.weights.input_weight[0] * u.delta * u.delta +
               problem.weights.input_weight[1] * u.a * u.a;
  }
  for (int k = 1; k < N; ++k) {
    const auto xk = state_as_array(states[static_cast<std::size_t>(k)]);
    for (int j = 0; j < 4; ++j) {
      const double e = xk[j] - ref[j];
      b.stage += problem.weights.stage_weight[j] * e * e;
    }
  }
  {
    const auto xN = state_as_array(states[static_cast<std::size_t>(N)]);
    for (int j = 0; j < 4; ++j) {
      const double e = xN[j] - ref[j];
      b.terminal += problem.weights.terminal_weight[j] * e * e;
    }
  }
  for (int k = 1; k <= N; ++k) {
    const auto & s = states[static_cast<std::size_t>(k)];
    const Vec2 pos{s.x, s.y};
    b.infra += infra_risk(pos, problem.lines, problem.infra);
    const auto objs = objects_at_step(problem, k);
    b.object += object_risk(pos, objs);
  }
  return {b.sum(), b};
}

double state_penalty(const OcpProblem & problem, std::span<const ControlInput> inputs)
{
  check_inputs(problem, inputs);
  const auto states = rollout(problem.initial_state, inputs, problem.vehicle);
  const auto bounds = bounds_as_array(problem.vehicle.state_bounds);

  double penalty = 0.0;
  for (int k = 1; k <= problem.horizon_N; ++k) {
    const auto xk = state_as_array(states[static_cast<std::size_t>(k)]);
    for (int j = 0; j < 4; ++j) {
      if (!bounds[j].bounded()) {
        continue;
      }
      const double below = std::max(0.0, bounds[j].lo - xk[j]);
      const double above = std::max(0.0, xk[j] - bounds[j].hi);
      penalty += problem.penalty_weight * (below * below + above * above);
    }
  }
  return penalty;
}

double objective(const OcpProblem & problem, std::span<const ControlInput> inputs)
{
  return total_cost(problem, inputs).first + state_penalty(problem, inputs);
}

std::vector<double> cost_gradient(const OcpProblem & problem,
                                  std::span<const ControlInput> inputs)
{
  check_inputs(problem, inputs);
  const auto states = rollout(problem.initial_state, inputs, problem.vehicle);
  const auto ref = state_as_array(problem.reference);
  const auto bounds = bounds_as_array(problem.vehicle.state_bounds);
  const int N = problem.horizon_N;
  const double ts = problem.vehicle.ts;
  const double L = problem.vehicle.wheelbase_L;

  // Per-step state cost gradient: stage/terminal quadratics, risk, penalty.
  auto stage_state_grad = [&](int k) {
    std::array<double, 4> g{0.0, 0.0, 0.0, 0.0};
    const auto & s = states[static_cast<std::size_t>(k)];
    const auto xk = state_as_array(s);
    if (k >= 1 && k < N) {
      for (int j = 0; j < 4; ++j) {
        g[j] += 2.0 * problem.weights.stage_weight[j] * (xk[j] - ref[j]);
      }
    }
    if (k == N) {
      for (int j = 0; j < 4; ++j) {
        g[j] += 2.0 * problem.weights.terminal_weight[j] * (xk[j] - ref[j]);
      }
    }
    if (k >= 1) {
      const Vec2 pos{s.x, s.y};
      const Vec2 gi = infra_risk_grad(pos, problem.lines, problem.infra);
      const auto objs = objects_at_step(problem, k);
      const Vec2 go = object_risk_grad(pos, objs);
      g[0] += gi.x + go.x;
      g[1] += gi.y + go.y;
      for (int j = 0; j < 4; ++j) {
        if (!bounds[j].bounded()) {
          continue;
        }
        const double below = std::max(0.0, bounds[j].lo - xk[j]);
        const double above = std::max(0.0, xk[j] - bounds[j].hi);
        g[j] += 2.0 * problem.penalty_weight * (above - below);
      }
    }
    return g;
  };

  std::vector<double> grad(2 * static_cast<std::size_t>(N), 0.0);
  std::array<double, 4> lambda = stage_state_grad(N);

  for (int k = N - 1; k >= 0; --k) {
    const auto & s = states[static_cast<std::size_t>(k)];
    const auto & u = inputs[static_cast<std::size_t>(k)];
    const double sin_th = std::sin(s.theta);
    const double cos_th = std::cos(s.theta);
    const double cos_d = std::cos(u.delta);

    // g_u = d(input cost)/du + B_k^T lambda_{k+1}
    const double dtheta_ddelta = ts * s.v / (L * cos_d * cos_d);
    grad[2 * static_cast<std::size_t>(k)] =
      2.0 * problem.weights.input_weight[0] * u.delta + dtheta_ddelta * lambda[2];
    grad[2 * static_cast<std::size_t>(k) + 1] =
      2.0 * problem.weights.input_weight[1] * u.a + ts * lambda[3];

    // lambda_k = d(stage cost)/dx_k + A_k^T lambda_{k+1}
    const auto own = stage_state_grad(k);
    std::array<double, 4> next;
    next[0] = own[0] + lambda[0];
    next[1] = own[1] + lambda[1];
    next[2] = own[2] - ts * s.v * sin_th * lambda[0] + ts * s.v * cos_th * lambda[1] + lambda[2];
    next[3] = own[3] + ts * cos_th * lambda[0] + ts * sin_th * lambda[1] +
              (ts / L) * std::tan(u.delta) * lambda[2] + lambda[3];
    lambda = next;
  }
  return grad;
}

void input_bounds(const OcpProblem & problem, std::vector<double> & lo, std::vector<double> & hi)
{
  const auto n = 2 * static_cast<std::size_t>(problem.horizon_N);
  lo.resize(n);
  hi.resize(n);
  for (std::size_t k = 0; k < static_cast<std::size_t>(problem.horizon_N); ++k) {
    lo[2 * k] = problem.vehicle.input_bounds.delta.lo;
    hi[2 * k] = problem.vehicle.input_bounds.delta.hi;
    lo[2 * k + 1] = problem.vehicle.input_bounds.a.lo;
    hi[2 * k + 1] = problem.vehicle.input_bounds.a.hi;
  }
}

}  // namespace riskmpc
