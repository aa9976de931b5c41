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

// Arithmetic kernels behind the Scheffe application. Each kernel has a scalar
// reference and an AVX2 variant; the variant is picked once at startup from
// CPUID (override with ADVSEL_SIMD=scalar).
//
// Floating-point reductions use four interleaved partial sums combined as
// ((s0 + s1) + (s2 + s3)) followed by the tail in index order, in both
// variants, so scalar and AVX2 results are bitwise identical.

#ifndef ADVSEL_KERNELS_HPP_
#define ADVSEL_KERNELS_HPP_

#include <cstdint>
#include <span>
#include <string_view>

namespace advsel::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
Isa active_isa();
// For tests and benchmarks. Throws if the ISA is not supported on this host.
void force_isa(Isa isa);

struct SetMass {
  double first = 0.0;   // p1(S)
  double second = 0.0;  // p2(S)
};

// sum_i |a_i - b_i|. Spans must have equal length.
double l1_distance(std::span<const double> a, std::span<const double> b);

// S = {i : p1_i > p2_i}. Writes membership[i] = 1 if i in S else 0 and returns
// the masses of S under both vectors.
SetMass scheffe_masses(std::span<const double> p1, std::span<const double> p2,
                       std::span<std::int32_t> membership);

// Number of samples s with membership[s] != 0. Every sample must index into membership.
std::uint64_t count_members(std::span<const std::uint32_t> samples,
                            std::span<const std::int32_t> membership);

namespace scalar {
double l1_distance(std::span<const double> a, std::span<const double> b);
SetMass scheffe_masses(std::span<const double> p1, std::span<const double> p2,
                       std::span<std::int32_t> membership);
std::uint64_t count_members(std::span<const std::uint32_t> samples,
                            std::span<const std::int32_t> membership);
}  // namespace scalar

namespace avx2 {
// Only callable when isa_supported(Isa::kAvx2).
double l1_distance(std::span<const double> a, std::span<const double> b);
SetMass scheffe_masses(std::span<const double> p1, std::span<const double> p2,
                       std::span<std::int32_t> membership);
std::uint64_t count_members(std::span<const std::uint32_t> samples,
                            std::span<const std::int32_t> membership);
}  // namespace avx2

}  // namespace advsel::kernels

#endif  // ADVSEL_KERNELS_HPP_
