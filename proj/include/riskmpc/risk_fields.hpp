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

#ifndef RISKMPC_RISK_FIELDS_HPP_
#define RISKMPC_RISK_FIELDS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace riskmpc
{

struct Vec2
{
  double x{0.0};
  double y{0.0};
};

/// Cubic lane-boundary polynomial y(x) = c0 + c1 x + c2 x^2 + c3 x^3 in the
/// planning frame. An optional per-line amplitude overrides the scenario-wide
/// default (e.g., centerlines toward oncoming traffic can be made riskier).
struct LaneLine
{
  double c0{0.0};
  double c1{0.0};
  double c2{0.0};
  double c3{0.0};
  std::optional<double> amplitude_override;

  [[nodiscard]] double eval(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
  [[nodiscard]] double slope(double x) const { return (3.0 * c3 * x + 2.0 * c2) * x + c1; }
};

struct InfraRiskParams
{
  double amplitude_AI{100.0};
  double sigma{1.3};  // [m]
};

struct ObjectState
{
  double x{0.0};      // [m]
  double y{0.0};      // [m]
  double theta{0.0};  // [rad]
};

struct ObjectRiskParams
{
  double amplitude_AO{1000.0};
  double sigma_x{20.0};  // deviation along the object heading [m]
  double sigma_y{1.3};   // deviation across the object heading [m]
};

struct ObjectRisk
{
  ObjectState state;
  ObjectRiskParams params;
};

/// Sum of per-line Gaussian bumps, each centered on the boundary curve.
double infra_risk(const Vec2 & pos, std::span<const LaneLine> lines, const InfraRiskParams & p);

/// Sum of rotated anisotropic Gaussian bumps, one per object.
double object_risk(const Vec2 & pos, std::span<const ObjectRisk> objects);

/// Analytic partial derivatives of the field values w.r.t. ego (x, y).
Vec2 infra_risk_grad(const Vec2 & pos, std::span<const LaneLine> lines,
                     const InfraRiskParams & p);
Vec2 object_risk_grad(const Vec2 & pos, std::span<const ObjectRisk> objects);

struct Rect
{
  double x_min{0.0};
  double x_max{0.0};
  double y_min{0.0};
  double y_max{0.0};
};

/// Row-major raster; value(row i, col j) is the risk at
/// (x0 + (j + 0.5) dx, y0 + (i + 0.5) dy), i.e., cell centers.
struct RiskGrid
{
  double x0{0.0};
  double y0{0.0};
  double dx{0.0};
  double dy{0.0};
  std::size_t nx{0};
  std::size_t ny{0};
  std::vector<double> values;  // ny rows of nx values

  [[nodiscard]] double at(std::size_t row, std::size_t col) const
  {
    return values[row * nx + col];
  }
};

/// Rasterize infra + object risk over a rectangle at the given cell size.
/// Throws std::invalid_argument if the region is degenerate or exceeds 1e7 cells.
RiskGrid sample_field(const Rect & region, double resolution, std::span<const LaneLine> lines,
                      std::span<const ObjectRisk> objects, const InfraRiskParams & infra);

}  // namespace riskmpc

#endif  // RISKMPC_RISK_FIELDS_HPP_
