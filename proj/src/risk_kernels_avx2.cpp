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

#if defined(RISKMPC_HAVE_AVX2_KERNEL)

#include <immintrin.h>

#include <cmath>

namespace riskmpc::kernels
{

namespace
{

// Lane-wise libm exp keeps the variant bit-identical to the reference kernel.
inline __m256d exp_pd(__m256d v)
{
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  lanes[0] = std::exp(lanes[0]);
  lanes[1] = std::exp(lanes[1]);
  lanes[2] = std::exp(lanes[2]);
  lanes[3] = std::exp(lanes[3]);
  return _mm256_load_pd(lanes);
}

}  // namespace

// Mirrors risk_batch_scalar with explicit mul/add (no FMA contraction) in the
// same association order, four points per pass.
void risk_batch_avx2(const FieldCoefs & field, const double * xs, const double * ys,
                     double * out, std::size_t n)
{
  const __m256d neg_inv2s2 = _mm256_set1_pd(-field.inv_two_sigma2);
  const __m256d neg_half = _mm256_set1_pd(-0.5);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs + i);
    const __m256d y = _mm256_loadu_pd(ys + i);
    __m256d r = _mm256_setzero_pd();

    for (const auto & ln : field.lines) {
      __m256d p = _mm256_mul_pd(_mm256_set1_pd(ln.c3), x);
      p = _mm256_add_pd(p, _mm256_set1_pd(ln.c2));
      p = _mm256_mul_pd(p, x);
      p = _mm256_add_pd(p, _mm256_set1_pd(ln.c1));
      p = _mm256_mul_pd(p, x);
      p = _mm256_add_pd(p, _mm256_set1_pd(ln.c0));
      const __m256d t = _mm256_sub_pd(y, p);
      const __m256d arg = _mm256_mul_pd(_mm256_mul_pd(t, t), neg_inv2s2);
      r = _mm256_add_pd(r, _mm256_mul_pd(_mm256_set1_pd(ln.amplitude), exp_pd(arg)));
    }

    for (const auto & ob : field.objects) {
      const __m256d dx = _mm256_sub_pd(x, _mm256_set1_pd(ob.x));
      const __m256d dy = _mm256_sub_pd(y, _mm256_set1_pd(ob.y));
      const __m256d t1 = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(ob.m11), dx), dx);
      const __m256d t2 = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(ob.two_m12), dx), dy);
      const __m256d t3 = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(ob.m22), dy), dy);
      const __m256d f = _mm256_add_pd(_mm256_add_pd(t1, t2), t3);
      const __m256d arg = _mm256_mul_pd(neg_half, f);
      r = _mm256_add_pd(r, _mm256_mul_pd(_mm256_set1_pd(ob.amplitude), exp_pd(arg)));
    }

    _mm256_storeu_pd(out + i, r);
  }

  if (i < n) {
    risk_batch_scalar(field, xs + i, ys + i, out + i, n - i);
  }
}

}  // namespace riskmpc::kernels

#endif  // RISKMPC_HAVE_AVX2_KERNEL
