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
#include <stdexcept>
#include <vector>

#include "riskmpc/vehicle_model.hpp"

using namespace riskmpc;

namespace
{

VehicleParams table1_params()
{
  VehicleParams p;
  p.wheelbase_L = 2.7;
  p.ts = 0.75;
  return p;
}

}  // namespace

TEST_CASE("step matches the forward-Euler update written out by hand")
{
  VehicleParams p = table1_params();
  VehicleState x{1.0, 2.0, 0.1, 10.0};
  ControlInput u{0.05, -1.0};

  VehicleState next = step(x, u, p);

  CHECK(next.x == doctest::Approx(1.0 + 0.75 * 10.0 * std::cos(0.1)).epsilon(1e-15));
  CHECK(next.y == doctest::Approx(2.0 + 0.75 * 10.0 * std::sin(0.1)).epsilon(1e-15));
  CHECK(next.theta == doctest::Approx(0.1 + 0.75 * (10.0 / 2.7) * std::tan(0.05)).epsilon(1e-15));
  CHECK(next.v == doctest::Approx(10.0 + 0.75 * (-1.0)).epsilon(1e-15));
}

TEST_CASE("coasting straight for the full horizon covers N*ts*v meters")
{
  VehicleParams p = table1_params();
  std::vector<ControlInput> u(10, ControlInput{0.0, 0.0});
  auto traj = rollout(VehicleState{0.0, 0.0, 0.0, 10.0}, u, p);

  REQUIRE(traj.size() == 11);
  CHECK(traj.back().x == doctest::Approx(75.0).epsilon(1e-12));
  for (const auto & s : traj) {
    CHECK(s.y == 0.0);
    CHECK(s.theta == 0.0);
    CHECK(s.v == 10.0);
  }
}

TEST_CASE("rollout equals repeated step application")
{
  VehicleParams p = table1_params();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> du(-0.1, 0.1);
  std::uniform_real_distribution<double> da(-4.0, 0.5);

  std::vector<ControlInput> u(20);
  for (auto & ui : u) {
    ui = {du(rng), da(rng)};
  }
  VehicleState x0{3.0, -1.0, 0.2, 8.0};
  auto traj = rollout(x0, u, p);

  REQUIRE(traj.size() == u.size() + 1);
  VehicleState x = x0;
  CHECK(traj[0].x == x.x);
  for (std::size_t k = 0; k < u.size(); ++k) {
    x = step(x, u[k], p);
    CHECK(traj[k + 1].x == x.x);
    CHECK(traj[k + 1].y == x.y);
    CHECK(traj[k + 1].theta == x.theta);
    CHECK(traj[k + 1].v == x.v);
  }
}

TEST_CASE("zero steering keeps y and theta constant")
{
  VehicleParams p = table1_params();
  std::vector<ControlInput> u(15, ControlInput{0.0, -0.3});
  auto traj = rollout(VehicleState{0.0, 4.2, 0.0, 9.0}, u, p);
  for (const auto & s : traj) {
    CHECK(s.y == 4.2);
    CHECK(s.theta == 0.0);
  }
}

TEST_CASE("mirrored steering mirrors the trajectory")
{
  VehicleParams p = table1_params();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> du(-0.1, 0.1);

  std::vector<ControlInput> u(12), um(12);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double d = du(rng);
    u[k] = {d, -0.5};
    um[k] = {-d, -0.5};
  }
  auto a = rollout(VehicleState{0.0, 0.0, 0.0, 10.0}, u, p);
  auto b = rollout(VehicleState{0.0, 0.0, 0.0, 10.0}, um, p);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].x == doctest::Approx(b[k].x).epsilon(1e-14));
    CHECK(a[k].y == doctest::Approx(-b[k].y).epsilon(1e-14));
    CHECK(a[k].theta == doctest::Approx(-b[k].theta).epsilon(1e-14));
    CHECK(a[k].v == b[k].v);
  }
}

TEST_CASE("rollout is bit-deterministic")
{
  VehicleParams p = table1_params();
  std::vector<ControlInput> u(8, ControlInput{0.03, -0.7});
  VehicleState x0{0.5, 1.5, -0.05, 7.0};
  auto a = rollout(x0, u, p);
  auto b = rollout(x0, u, p);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].x == b[k].x);
    CHECK(a[k].y == b[k].y);
    CHECK(a[k].theta == b[k].theta);
    CHECK(a[k].v == b[k].v);
  }
}

TEST_CASE("empty input sequence is rejected")
{
  VehicleParams p = table1_params();
  std::vector<ControlInput> empty;
  CHECK_THROWS_AS(rollout(VehicleState{}, empty, p), std::invalid_argument);
}

TEST_CASE("parameter validation")
{
  VehicleParams p = table1_params();
  CHECK(p.valid());
  p.ts = 0.0;
  CHECK_FALSE(p.valid());
  p = table1_params();
  p.wheelbase_L = -1.0;
  CHECK_FALSE(p.valid());
  p = table1_params();
  p.input_bounds.delta = {0.1, -0.1};
  CHECK_FALSE(p.valid());
}
