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

#include "riskmpc/vehicle_model.hpp"

#include <cmath>
#include <stdexcept>

namespace riskmpc
{

bool VehicleParams::valid() const
{
  return wheelbase_L > 0.0 && ts > 0.0 && state_bounds.x.valid() &&
         state_bounds.y.valid() && state_bounds.theta.valid() && state_bounds.v.valid() &&
         input_bounds.delta.valid() && input_bounds.a.valid();
}

VehicleState step(const VehicleState & state, const ControlInput & input,
                  const VehicleParams & params)
{
  VehicleState next;
  next.x = state.x + params.ts * state.v * std::cos(state.theta);
  next.y = state.y + params.ts * state.v * std::sin(state.theta);
  next.theta = state.theta + params.ts * (state.v / params.wheelbase_L) * std::tan(input.delta);
  next.v = state.v + params.ts * input.a;
  return next;
}

std::vector<VehicleState> rollout(const VehicleState & x0,
                                  std::span<const ControlInput> inputs,
                                  const VehicleParams & params)
{
  if (inputs.empty()) {
    throw std::invalid_argument("rollout: empty input sequence");
  }
  std::vector<VehicleState> states;
  states.reserve(inputs.size() + 1);
  states.push_back(x0);
  for (const auto & u : inputs) {
    states.push_back(step(states.back(), u, params));
  }
  return states;
}

}  // namespace riskmpc
