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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "advsel/core.hpp"
#include "advsel/kernels.hpp"

namespace advsel::kernels {

#ifndef ADVSEL_HAVE_AVX2
namespace avx2 {
double l1_distance(std::span<const double>, std::span<const double>) {
  throw std::logic_error("AVX2 kernels not compiled in");
}
SetMass scheffe_masses(std::span<const double>, std::span<const double>, std::span<std::int32_t>) {
  throw std::logic_error("AVX2 kernels not compiled in");
}
std::uint64_t count_members(std::span<const std::uint32_t>, std::span<const std::int32_t>) {
  throw std::logic_error("AVX2 kernels not compiled in");
}
}  // namespace avx2
#endif

namespace {

Isa detect() {
  if (const char* env = std::getenv("ADVSEL_SIMD"); env && std::string(env) == "scalar") {
    return Isa::kScalar;
  }
  return isa_supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw PreconditionError("kernel operands differ in length");
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if defined(ADVSEL_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error("requested ISA not supported on this host");
  current().store(isa, std::memory_order_relaxed);
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size());
  return active_isa() == Isa::kAvx2 ? avx2::l1_distance(a, b) : scalar::l1_distance(a, b);
}

SetMass scheffe_masses(std::span<const double> p1, std::span<const double> p2,
                       std::span<std::int32_t> membership) {
  require_same_length(p1.size(), p2.size());
  require_same_length(p1.size(), membership.size());
  return active_isa() == Isa::kAvx2 ? avx2::scheffe_masses(p1, p2, membership)
                                    : scalar::scheffe_masses(p1, p2, membership);
}

std::uint64_t count_members(std::span<const std::uint32_t> samples,
                            std::span<const std::int32_t> membership) {
  return active_isa() == Isa::kAvx2 ? avx2::count_members(samples, membership)
                                    : scalar::count_members(samples, membership);
}

}  // namespace advsel::kernels
