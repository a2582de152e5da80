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

#ifndef RISKMPC_SIM_HPP_
#define RISKMPC_SIM_HPP_

#include <string>
#include <vector>

#include "riskmpc/ocp.hpp"
#include "riskmpc/solver.hpp"

namespace riskmpc
{

/// Constant-velocity ground-truth object. Undetected tracks still move; they
/// only enter the planner's cost once detection_time has passed.
struct ObjectTrack
{
  ObjectState initial;
  double speed{0.0};  // along heading [m/s]
  ObjectRiskParams risk;
  double detection_time{0.0};  // [s]; 0 = visible from start

  [[nodiscard]] ObjectState pose_at(double t) const;
};

struct MpcConfig
{
  int horizon_N{10};
  double ts{0.75};
  OcpWeights weights;
  SolverConfig solver;
  double penalty_weight{1e4};
};

struct Scenario
{
  std::string name;
  std::vector<LaneLine> lanes;
  InfraRiskParams infra;
  std::vector<double> lane_centers_y;
  int rightmost_lane{0};
  VehicleState ego_initial;
  std::vector<ObjectTrack> objects;
  MpcConfig mpc;
  VehicleParams vehicle;
  double v_bar{10.0};
  double duration{30.0};

  [[nodiscard]] double rightmost_center_y() const
  {
    return lane_centers_y[static_cast<std::size_t>(rightmost_lane)];
  }
};

struct TickRecord
{
  double t{0.0};
  VehicleState ego;
  ControlInput applied;
  std::vector<VehicleState> plan;
  SolveReport report;
  std::vector<double> object_distances;  // center-to-center, ground truth
  double infra_risk_at_ego{0.0};
  double object_risk_at_ego{0.0};  // visible objects only
};

struct SimLog
{
  std::vector<TickRecord> ticks;
};

/// Constant-velocity extrapolation of a track from its pose at t_now.
std::vector<ObjectState> predict_object(const ObjectTrack & track, double t_now, int N,
                                        double ts);

/// Indices of tracks with detection_time <= t_now (boundary inclusive).
std::vector<std::size_t> visible_objects(const Scenario & scenario, double t_now);

/// Receding-horizon loop with perfect tracking of the first planned step.
/// Throws std::runtime_error if the solver returns non-finite states.
SimLog run(const Scenario & scenario);

struct Metrics
{
  double mean_solve_time_s{0.0};
  double std_solve_time_s{0.0};
  double min_object_distance{0.0};
  double max_bound_violation{0.0};
  double terminal_lateral_error{0.0};
  double min_speed{0.0};
};

/// Summary statistics over a completed run. Throws on an empty log.
Metrics metrics(const SimLog & log, const Scenario & scenario);

}  // namespace riskmpc

#endif  // RISKMPC_SIM_HPP_
