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

#ifndef RISKMPC_VEHICLE_MODEL_HPP_
#define RISKMPC_VEHICLE_MODEL_HPP_

#include <limits>
#include <span>
#include <vector>

namespace riskmpc
{

/// Planar kinematic state: rear-axle position, heading, longitudinal speed.
struct VehicleState
{
  double x{0.0};      // [m]
  double y{0.0};      // [m]
  double theta{0.0};  // [rad]
  double v{0.0};      // [m/s]
};

/// Front-axle steering angle and longitudinal acceleration.
struct ControlInput
{
  double delta{0.0};  // [rad]
  double a{0.0};      // [m/s^2]
};

struct Bounds
{
  double lo{-std::numeric_limits<double>::infinity()};
  double hi{std::numeric_limits<double>::infinity()};

  [[nodiscard]] bool valid() const { return lo <= hi; }
  [[nodiscard]] bool bounded() const
  {
    return lo > -std::numeric_limits<double>::infinity() ||
           hi < std::numeric_limits<double>::infinity();
  }
};

struct StateBounds
{
  Bounds x;
  Bounds y;
  Bounds theta;
  Bounds v;
};

struct InputBounds
{
  Bounds delta;
  Bounds a;
};

struct VehicleParams
{
  double wheelbase_L{2.7};  // [m]
  double ts{0.75};          // sampling time [s]
  StateBounds state_bounds;
  InputBounds input_bounds;

  [[nodiscard]] bool valid() const;
};

/// One forward-Euler step of the kinematic bicycle model. Pure; never clamps.
VehicleState step(const VehicleState & state, const ControlInput & input,
                  const VehicleParams & params);

/// Simulate a full input sequence. Returns N+1 states, element 0 == x0.
/// Throws std::invalid_argument on an empty input sequence.
std::vector<VehicleState> rollout(const VehicleState & x0,
                                  std::span<const ControlInput> inputs,
                                  const VehicleParams & params);

}  // namespace riskmpc

#endif  // RISKMPC_VEHICLE_MODEL_HPP_
