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

#include <cmath>

#include "advsel/kernels.hpp"

namespace advsel::kernels::scalar {

double l1_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t body = n - n % 4;
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < body; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) s[l] += std::fabs(a[i + l] - b[i + l]);
  }
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (std::size_t i = body; i < n; ++i) total += std::fabs(a[i] - b[i]);
  return total;
}

SetMass scheffe_masses(std::span<const double> p1, std::span<const double> p2,
                       std::span<std::int32_t> membership) {
  const std::size_t n = p1.size();
  const std::size_t body = n - n % 4;
  double s1[4] = {0.0, 0.0, 0.0, 0.0};
  double s2[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < body; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const bool in = p1[i + l] > p2[i + l];
      membership[i + l] = in ? 1 : 0;
      s1[l] += in ? p1[i + l] : 0.0;
      s2[l] += in ? p2[i + l] : 0.0;
    }
  }
  SetMass m{(s1[0] + s1[1]) + (s1[2] + s1[3]), (s2[0] + s2[1]) + (s2[2] + s2[3])};
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
  std::uint64_t count = 0;
  for (std::uint32_t s : samples) count += membership[s] != 0;
  return count;
}

}  // namespace advsel::kernels::scalar
