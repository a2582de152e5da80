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

#ifndef RISKMPC_SOLVER_HPP_
#define RISKMPC_SOLVER_HPP_

#include <optional>
#include <vector>

#include "riskmpc/ocp.hpp"

namespace riskmpc
{

struct SolverConfig
{
  int max_iterations{200};
  double grad_tolerance{1e-4};  // projected-gradient infinity norm
  double time_budget_s{0.75};
  double ls_shrink{0.5};
  double ls_sufficient_decrease{1e-4};
  bool warm_start{true};
  int lbfgs_memory{8};

  [[nodiscard]] bool valid() const
  {
    return max_iterations >= 1 && grad_tolerance > 0.0 && time_budget_s > 0.0 &&
           ls_shrink > 0.0 && ls_shrink < 1.0 && ls_sufficient_decrease > 0.0 &&
           lbfgs_memory >= 0;
  }
};

enum class SolveStatus { converged, iteration_limit, time_limit };

const char * to_string(SolveStatus s);

struct SolveReport
{
  int iterations{0};
  double final_projected_grad_norm{0.0};
  double wall_time_s{0.0};
  SolveStatus status{SolveStatus::converged};
  std::vector<double> cost_trace;  // objective value per accepted iterate
};

/// Minimize the box-constrained single-shooting objective by projected
/// gradient descent with limited-memory quasi-Newton scaling and backtracking
/// line search. Always returns the best iterate found; inputs satisfy the box
/// bounds exactly. Cold start is zero steering, zero acceleration.
std::pair<OcpSolution, SolveReport> solve(
  const OcpProblem & problem, const SolverConfig & config,
  const std::optional<std::vector<ControlInput>> & warm_start = std::nullopt);

/// Receding-horizon shift: drop the applied input, duplicate the last one.
std::vector<ControlInput> shift_warm_start(const std::vector<ControlInput> & previous);

}  // namespace riskmpc

#endif  // RISKMPC_SOLVER_HPP_
