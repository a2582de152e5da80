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

#include "riskmpc/risk_fields.hpp"

#include <cmath>
#include <stdexcept>

#include "riskmpc/risk_kernels.hpp"

namespace riskmpc
{

double infra_risk(const Vec2 & pos, std::span<const LaneLine> lines, const InfraRiskParams & p)
{
  const double inv2s2 = 1.0 / (2.0 * p.sigma * p.sigma);
  double risk = 0.0;
  for (const auto & line : lines) {
    const double amp = line.amplitude_override.value_or(p.amplitude_AI);
    const double t = pos.y - line.eval(pos.x);
    risk += amp * std::exp(-(t * t) * inv2s2);
  }
  return risk;
}

Vec2 infra_risk_grad(const Vec2 & pos, std::span<const LaneLine> lines,
                     const InfraRiskParams & p)
{
  const double inv_s2 = 1.0 / (p.sigma * p.sigma);
  Vec2 grad;
  for (const auto & line : lines) {
    const double amp = line.amplitude_override.value_or(p.amplitude_AI);
    const double t = pos.y - line.eval(pos.x);
    const double bump = amp * std::exp(-0.5 * t * t * inv_s2);
    const double common = bump * t * inv_s2;
    // d/dx enters through the curve: t depends on x via -y~(x).
    grad.x += common * line.slope(pos.x);
    grad.y -= common;
  }
  return grad;
}

namespace
{

struct Quadratic
{
  double m11, m12, m22;
};

Quadratic mahalanobis_form(const ObjectRisk & o)
{
  const double c = std::cos(o.state.theta);
  const double s = std::sin(o.state.theta);
  const double a = 1.0 / (o.params.sigma_x * o.params.sigma_x);
  const double b = 1.0 / (o.params.sigma_y * o.params.sigma_y);
  // M = R diag(a, b) R^T
  return {c * c * a + s * s * b, c * s * (a - b), s * s * a + c * c * b};
}

}  // namespace

double object_risk(const Vec2 & pos, std::span<const ObjectRisk> objects)
{
  double risk = 0.0;
  for (const auto & o : objects) {
    const auto q = mahalanobis_form(o);
    const double dx = pos.x - o.state.x;
    const double dy = pos.y - o.state.y;
    const double f = q.m11 * dx * dx + 2.0 * q.m12 * dx * dy + q.m22 * dy * dy;
    risk += o.params.amplitude_AO * std::exp(-0.5 * f);
  }
  return risk;
}

Vec2 object_risk_grad(const Vec2 & pos, std::span<const ObjectRisk> objects)
{
  Vec2 grad;
  for (const auto & o : objects) {
    const auto q = mahalanobis_form(o);
    const double dx = pos.x - o.state.x;
    const double dy = pos.y - o.state.y;
    const double f = q.m11 * dx * dx + 2.0 * q.m12 * dx * dy + q.m22 * dy * dy;
    const double bump = o.params.amplitude_AO * std::exp(-0.5 * f);
    // grad = -bump * M d
    grad.x -= bump * (q.m11 * dx + q.m12 * dy);
    grad.y -= bump * (q.m12 * dx + q.m22 * dy);
  }
  return grad;
}

RiskGrid sample_field(const Rect & region, double resolution, std::span<const LaneLine> lines,
                      std::span<const ObjectRisk> objects, const InfraRiskParams & infra)
{
  if (resolution <= 0.0) {
    throw std::invalid_argument("sample_field: resolution must be positive");
  }
  if (region.x_max <= region.x_min || region.y_max <= region.y_min) {
    throw std::invalid_argument("sample_field: degenerate region");
  }
  const auto nx = static_cast<std::size_t>(std::ceil((region.x_max - region.x_min) / resolution));
  const auto ny = static_cast<std::size_t>(std::ceil((region.y_max - region.y_min) / resolution));
  if (nx * ny > 10'000'000) {
    throw std::invalid_argument("sample_field: more than 1e7 cells");
  }

  RiskGrid grid;
  grid.x0 = region.x_min;
  grid.y0 = region.y_min;
  grid.dx = resolution;
  grid.dy = resolution;
  grid.nx = nx;
  grid.ny = ny;
  grid.values.resize(nx * ny);

  const auto field = kernels::prepare(lines, infra, objects);
  std::vector<double> xs(nx), ys(nx);
  for (std::size_t i = 0; i < ny; ++i) {
    const double yc = region.y_min + (static_cast<double>(i) + 0.5) * resolution;
    for (std::size_t j = 0; j < nx; ++j) {
      xs[j] = region.x_min + (static_cast<double>(j) + 0.5) * resolution;
      ys[j] = yc;
    }
    kernels::risk_batch(field, xs.data(), ys.data(), grid.values.data() + i * nx, nx);
  }
  return grid;
}

}  // namespace riskmpc
