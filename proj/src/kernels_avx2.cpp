// Copyright 2026 The advsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Built with -mavx2 on x86-64 only; the dispatcher never calls into this
// file unless CPUID reports AVX2.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "advsel/kernels.hpp"

namespace advsel::kernels::avx2 {

namespace {

inline double reduce4(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

double l1_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t body = n - n % 4;
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
  }
  double total = reduce4(acc);
  for (std::size_t i = body; i < n; ++i) total += std::fabs(a[i] - b[i]);
  return total;
}

SetMass scheffe_masses(std::span<const double> p1, std::span<const double> p2,
                       std::span<std::int32_t> membership) {
  const std::size_t n = p1.size();
  const std::size_t body = n - n % 4;
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d x = _mm256_loadu_pd(p1.data() + i);
    const __m256d y = _mm256_loadu_pd(p2.data() + i);
    const __m256d gt = _mm256_cmp_pd(x, y, _CMP_GT_OQ);
    acc1 = _mm256_add_pd(acc1, _mm256_and_pd(gt, x));
    acc2 = _mm256_add_pd(acc2, _mm256_and_pd(gt, y));
    // movemask bit l -> 0/1 membership for lane l.
    const int bits = _mm256_movemask_pd(gt);
    for (int l = 0; l < 4; ++l) membership[i + l] = (bits >> l) & 1;
  }
  SetMass m{reduce4(acc1), reduce4(acc2)};
  for (std::size_t i = body; i < n; ++i) {
    const bool in = p1[i] > p2[i];
    membership[i] = in ? 1 : 0;
    if (in) {
      m.first += p1[i];
      m.second += p2[i];
    }
  }
  return m;
}

std::uint64_t count_members(std::span<const std::uint32_t> samples,
                            std::span<const std::int32_t> membership) {
  const std::size_t n = samples.size();
  const std::size_t body = n - n % 8;
  std::uint64_t count = 0;
  const std::size_t kFlush = std::size_t{1} << 24;  // keeps 32-bit lanes from overflowing
  const __m256i zero = _mm256_setzero_si256();
  const __m256i one = _mm256_set1_epi32(1);
  for (std::size_t block = 0; block < body; block += kFlush) {
    const std::size_t end = std::min(body, block + kFlush);
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t i = block; i < end; i += 8) {
      const __m256i idx =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(samples.data() + i));
      const __m256i m = _mm256_i32gather_epi32(membership.data(), idx, 4);
      // (m != 0) as 0/1
      acc = _mm256_add_epi32(acc, _mm256_andnot_si256(_mm256_cmpeq_epi32(m, zero), one));
    }
    alignas(32) std::uint32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    for (std::uint32_t v : lanes) count += v;
  }
  for (std::size_t i = body; i < n; ++i) count += membership[samples[i]] != 0;
  return count;
}

}  // namespace advsel::kernels::avx2
