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

#ifndef RISKMPC_OCP_HPP_
#define RISKMPC_OCP_HPP_

#include <array>
#include <span>
#include <vector>

#include "riskmpc/risk_fields.hpp"
#include "riskmpc/vehicle_model.hpp"

namespace riskmpc
{

/// Quadratic weights; state order is (x, y, theta, v), input order (delta, a).
struct OcpWeights
{
  std::array<double, 2> input_weight{1.0, 100.0};
  std::array<double, 4> terminal_weight{1.0, 0.01, 0.0, 0.0};
  std::array<double, 4> stage_weight{0.0, 0.0, 0.0, 0.0};
};

using ReferenceState = VehicleState;

/// Predicted poses of one object over the horizon (N+1 entries, index = step).
struct ObjectPrediction
{
  std::vector<ObjectState> states;
  ObjectRiskParams risk;
};

/// Single-shooting transcription of the finite-horizon program: the decision
/// vector is the flattened input sequence (delta_0, a_0, ..., a_{N-1}); states
/// are recovered by rollout, so the dynamics hold by construction. State
/// bounds (y, v) enter as a quadratic penalty, input bounds stay hard boxes.
struct OcpProblem
{
  int horizon_N{10};
  VehicleState initial_state;
  ReferenceState reference;
  OcpWeights weights;
  VehicleParams vehicle;
  std::vector<LaneLine> lines;
  InfraRiskParams infra;
  std::vector<ObjectPrediction> objects;
  double penalty_weight{1e4};

  [[nodiscard]] bool valid() const;
};

struct CostBreakdown
{
  double input{0.0};
  double stage{0.0};  // ships disabled (zero stage weights)
  double terminal{0.0};
  double infra{0.0};
  double object{0.0};

  [[nodiscard]] double sum() const { return input + stage + terminal + infra + object; }
};

struct OcpSolution
{
  std::vector<ControlInput> inputs;
  std::vector<VehicleState> states;
  double cost{0.0};
  CostBreakdown breakdown;
};

/// Goal state: rightmost lane center, N*ts*v_bar ahead, heading 0, speed v_bar.
ReferenceState build_reference(const VehicleState & initial, double lane_center_y, double v_bar,
                               int N, double ts);

/// Eq.-style cost: input quadratic + terminal quadratic + risk summed over
/// steps 1..N (the current state's risk is sunk). Excludes the bound penalty.
std::pair<double, CostBreakdown> total_cost(const OcpProblem & problem,
                                            std::span<const ControlInput> inputs);

/// Quadratic penalty for state-bound violations over steps 1..N.
double state_penalty(const OcpProblem & problem, std::span<const ControlInput> inputs);

/// What the solver minimizes: total_cost + state_penalty.
double objective(const OcpProblem & problem, std::span<const ControlInput> inputs);

/// Exact gradient of objective() w.r.t. the flattened inputs, by backward
/// accumulation through the rollout.
std::vector<double> cost_gradient(const OcpProblem & problem,
                                  std::span<const ControlInput> inputs);

/// Hard box bounds on the 2N decision entries.
void input_bounds(const OcpProblem & problem, std::vector<double> & lo, std::vector<double> & hi);

}  // namespace riskmpc

#endif  // RISKMPC_OCP_HPP_
