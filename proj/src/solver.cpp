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

#include "riskmpc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace riskmpc
{

const char * to_string(SolveStatus s)
{
  switch (s) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::iteration_limit:
      return "iteration_limit";
    case SolveStatus::time_limit:
      return "time_limit";
  }
  return "unknown";
}

namespace
{

using Clock = std::chrono::steady_clock;

double dot(const std::vector<double> & a, const std::vector<double> & b)
{
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<ControlInput> to_inputs(const std::vector<double> & z)
{
  std::vector<ControlInput> u(z.size() / 2);
  for (std::size_t k = 0; k < u.size(); ++k) {
    u[k] = {z[2 * k], z[2 * k + 1]};
  }
  return u;
}

struct LbfgsPair
{
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Standard two-loop recursion; returns -H*g.
std::vector<double> lbfgs_direction(const std::deque<LbfgsPair> & pairs,
                                    const std::vector<double> & g)
{
  std::vector<double> q = g;
  std::vector<double> alpha(pairs.size());
  for (std::size_t i = pairs.size(); i-- > 0;) {
    alpha[i] = pairs[i].rho * dot(pairs[i].s, q);
    for (std::size_t j = 0; j < q.size(); ++j) {
      q[j] -= alpha[i] * pairs[i].y[j];
    }
  }
  if (!pairs.empty()) {
    const auto & last = pairs.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (auto & v : q) {
      v *= gamma;
    }
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double beta = pairs[i].rho * dot(pairs[i].y, q);
    for (std::size_t j = 0; j < q.size(); ++j) {
      q[j] += (alpha[i] - beta) * pairs[i].s[j];
    }
  }
  for (auto & v : q) {
    v = -v;
  }
  return q;
}

}  // namespace

std::vector<ControlInput> shift_warm_start(const std::vector<ControlInput> & previous)
{
  if (previous.empty()) {
    return {};
  }
  std::vector<ControlInput> shifted(previous.begin() + 1, previous.end());
  shifted.push_back(previous.back());
  return shifted;
}

std::pair<OcpSolution, SolveReport> solve(
  const OcpProblem & problem, const SolverConfig & config,
  const std::optional<std::vector<ControlInput>> & warm_start)
{
  if (!problem.valid()) {
    throw std::invalid_argument("solve: invalid problem");
  }
  if (!config.valid()) {
    throw std::invalid_argument("solve: invalid config");
  }
  if (warm_start && static_cast<int>(warm_start->size()) != problem.horizon_N) {
    throw std::invalid_argument("solve: warm start length does not match horizon");
  }
  const auto t_start = Clock::now();
  const auto n = 2 * static_cast<std::size_t>(problem.horizon_N);

  std::vector<double> lo, hi;
  input_bounds(problem, lo, hi);
  auto project = [&](std::vector<double> & z) {
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = std::clamp(z[i], lo[i], hi[i]);
    }
  };

  std::vector<double> z(n, 0.0);
  if (config.warm_start && warm_start) {
    for (std::size_t k = 0; k < warm_start->size(); ++k) {
      z[2 * k] = (*warm_start)[k].delta;
      z[2 * k + 1] = (*warm_start)[k].a;
    }
  }
  project(z);

  auto eval_f = [&](const std::vector<double> & zz) {
    const auto u = to_inputs(zz);
    return objective(problem, u);
  };
  auto eval_g = [&](const std::vector<double> & zz) {
    const auto u = to_inputs(zz);
    return cost_gradient(problem, u);
  };
  auto projected_grad_norm = [&](const std::vector<double> & zz,
                                 const std::vector<double> & g) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      norm = std::max(norm, std::abs(zz[i] - std::clamp(zz[i] - g[i], lo[i], hi[i])));
    }
    return norm;
  };
  auto elapsed = [&]() {
    return std::chrono::duration<double>(Clock::now() - t_start).count();
  };

  double f = eval_f(z);
  std::vector<double> g = eval_g(z);

  SolveReport report;
  report.cost_trace.push_back(f);
  report.status = SolveStatus::iteration_limit;

  std::deque<LbfgsPair> pairs;

  for (int it = 0; it < config.max_iterations; ++it) {
    const double pg = projected_grad_norm(z, g);
    if (pg <= config.grad_tolerance) {
      report.status = SolveStatus::converged;
      break;
    }
    if (elapsed() >= config.time_budget_s) {
      report.status = SolveStatus::time_limit;
      break;
    }

    std::vector<double> d = lbfgs_direction(pairs, g);
    if (dot(d, g) >= 0.0) {
      d = g;
      for (auto & v : d) {
        v = -v;
      }
    }

    // Backtracking along the projected arc; falls back to steepest descent
    // if the scaled direction yields no acceptable step.
    bool accepted = false;
    std::vector<double> z_new(n);
    double f_new = f;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      double step = 1.0;
      for (int ls = 0; ls < 60; ++ls) {
        for (std::size_t i = 0; i < n; ++i) {
          z_new[i] = std::clamp(z[i] + step * d[i], lo[i], hi[i]);
        }
        double decrease_model = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          decrease_model += g[i] * (z_new[i] - z[i]);
        }
        if (decrease_model < 0.0) {
          f_new = eval_f(z_new);
          if (f_new <= f + config.ls_sufficient_decrease * decrease_model) {
            accepted = true;
            break;
          }
        }
        step *= config.ls_shrink;
      }
      if (!accepted) {
        d = g;
        for (auto & v : d) {
          v = -v;
        }
      }
    }
    if (!accepted) {
      // No descent step exists at line-search resolution; first-order
      // stationary for practical purposes.
      report.status = SolveStatus::converged;
      break;
    }

    auto g_new = eval_g(z_new);
    LbfgsPair pair;
    pair.s.resize(n);
    pair.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      pair.s[i] = z_new[i] - z[i];
      pair.y[i] = g_new[i] - g[i];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-12 * std::sqrt(dot(pair.s, pair.s)) * std::sqrt(dot(pair.y, pair.y))) {
      pair.rho = 1.0 / sy;
      pairs.push_back(std::move(pair));
      if (static_cast<int>(pairs.size()) > config.lbfgs_memory) {
        pairs.pop_front();
      }
    }

    z = z_new;
    f = f_new;
    g = std::move(g_new);
    report.iterations = it + 1;
    report.cost_trace.push_back(f);
  }

  report.final_projected_grad_norm = projected_grad_norm(z, g);
  if (report.status == SolveStatus::iteration_limit &&
      report.final_projected_grad_norm <= config.grad_tolerance) {
    report.status = SolveStatus::converged;
  }
  report.wall_time_s = elapsed();

  OcpSolution solution;
  solution.inputs = to_inputs(z);
  solution.states = rollout(problem.initial_state, solution.inputs, problem.vehicle);
  auto [cost, breakdown] = total_cost(problem, solution.inputs);
  solution.cost = cost;
  solution.breakdown = breakdown;
  return {std::move(solution), std::move(report)};
}

}  // namespace riskmpc
