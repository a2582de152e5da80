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

#ifndef RISKMPC_RISK_KERNELS_HPP_
#define RISKMPC_RISK_KERNELS_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "riskmpc/risk_fields.hpp"

// Batch evaluation of the combined risk field over point arrays. Used by the
// rasterizer, where the per-point scalar API would dominate runtime. The AVX2
// variant keeps the exact operation order of the scalar kernel (and calls the
// scalar exp per lane), so both produce bit-identical results; the dispatcher
// picks the widest variant the CPU supports.

namespace riskmpc::kernels
{

struct LineCoef
{
  double c0, c1, c2, c3;
  double amplitude;
};

/// Rotated-ellipse Gaussian, precomputed as the symmetric quadratic form
/// M = R diag(1/sx^2, 1/sy^2) R^T so the hot loop is pure arithmetic.
struct ObjectCoef
{
  double x, y;
  double m11, two_m12, m22;
  double amplitude;
};

struct FieldCoefs
{
  std::vector<LineCoef> lines;
  double inv_two_sigma2{0.0};
  std::vector<ObjectCoef> objects;
};

FieldCoefs prepare(std::span<const LaneLine> lines, const InfraRiskParams & infra,
                   std::span<const ObjectRisk> objects);

enum class Variant { scalar, avx2 };

/// Variant the dispatcher will use on this machine.
Variant active_variant();
std::string_view variant_name(Variant v);

/// out[i] = infra + object risk at (xs[i], ys[i]).
void risk_batch(const FieldCoefs & field, const double * xs, const double * ys, double * out,
                std::size_t n);

void risk_batch_scalar(const FieldCoefs & field, const double * xs, const double * ys,
                       double * out, std::size_t n);

#if defined(RISKMPC_WITH_AVX2)
#define RISKMPC_HAVE_AVX2_KERNEL 1
void risk_batch_avx2(const FieldCoefs & field, const double * xs, const double * ys,
                     double * out, std::size_t n);
#endif

}  // namespace riskmpc::kernels

#endif  // RISKMPC_RISK_KERNELS_HPP_
