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

#include <cmath>

#include "riskmpc/risk_kernels.hpp"

namespace riskmpc::kernels
{

FieldCoefs prepare(std::span<const LaneLine> lines, const InfraRiskParams & infra,
                   std::span<const ObjectRisk> objects)
{
  FieldCoefs field;
  field.inv_two_sigma2 = 1.0 / (2.0 * infra.sigma * infra.sigma);
  field.lines.reserve(lines.size());
  for (const auto & line : lines) {
    field.lines.push_back({line.c0, line.c1, line.c2, line.c3,
                           line.amplitude_override.value_or(infra.amplitude_AI)});
  }
  field.objects.reserve(objects.size());
  for (const auto & o : objects) {
    const double c = std::cos(o.state.theta);
    const double s = std::sin(o.state.theta);
    const double a = 1.0 / (o.params.sigma_x * o.params.sigma_x);
    const double b = 1.0 / (o.params.sigma_y * o.params.sigma_y);
    field.objects.push_back({o.state.x, o.state.y, c * c * a + s * s * b,
                             2.0 * (c * s * (a - b)), s * s * a + c * c * b,
                             o.params.amplitude_AO});
  }
  return field;
}

// Reference kernel. The SIMD variants must reproduce this operation order
// exactly; the equivalence suite asserts bitwise identity.
void risk_batch_scalar(const FieldCoefs & field, const double * xs, const double * ys,
                       double * out, std::size_t n)
{
  const double inv2s2 = field.inv_two_sigma2;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = xs[i];
    const double y = ys[i];
    double r = 0.0;
    for (const auto & ln : field.lines) {
      const double p = ((ln.c3 * x + ln.c2) * x + ln.c1) * x + ln.c0;
      const double t = y - p;
      r += ln.amplitude * std::exp(-(t * t) * inv2s2);
    }
    for (const auto & ob : field.objects) {
      const double dx = x - ob.x;
      const double dy = y - ob.y;
      const double f = ob.m11 * dx * dx + ob.two_m12 * dx * dy + ob.m22 * dy * dy;
      r += ob.amplitude * std::exp(-0.5 * f);
    }
    out[i] = r;
  }
}

}  // namespace riskmpc::kernels
