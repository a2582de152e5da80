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

#include "riskmpc/risk_kernels.hpp"

namespace riskmpc::kernels
{

namespace
{

Variant detect()
{
#if defined(RISKMPC_HAVE_AVX2_KERNEL)
  if (__builtin_cpu_supports("avx2")) {
    return Variant::avx2;
  }
#endif
  return Variant::scalar;
}

}  // namespace

Variant active_variant()
{
  static const Variant v = detect();
  return v;
}

std::string_view variant_name(Variant v)
{
  switch (v) {
    case Variant::avx2:
      return "avx2";
    case Variant::scalar:
    default:
      return "scalar";
  }
}

void risk_batch(const FieldCoefs & field, const double * xs, const double * ys, double * out,
                std::size_t n)
{
  switch (active_variant()) {
#if defined(RISKMPC_HAVE_AVX2_KERNEL)
    case Variant::avx2:
      risk_batch_avx2(field, xs, ys, out, n);
      return;
#endif
    default:
      risk_batch_scalar(field, xs, ys, out, n);
      return;
  }
}

}  // namespace riskmpc::kernels
