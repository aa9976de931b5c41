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

#include "advsel/algorithms.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace advsel {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 5> kNames{{
    {Algorithm::kComplete, "compl"},
    {Algorithm::kSequential, "seq"},
    {Algorithm::kModifiedKnockout, "ko-mod"},
    {Algorithm::kQuickSelect, "q-select"},
    {Algorithm::kCombined, "comb"},
}};

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  for (const auto& [id, name] : kNames) {
    if (id == a) return name;
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const auto& [id, n] : kNames) {
    if (n == name) return id;
  }
  return std::nullopt;
}

std::size_t knockout_save_count(std::size_t n, double epsilon) {
  detail::require_epsilon(epsilon);
  const double inv = 1.0 / epsilon;
  const double raw = inv * std::log(inv) * std::log2(static_cast<double>(n));
  const auto n1 = static_cast<std::size_t>(std::ceil(raw));
  return std::max<std::size_t>(n1, 2);
}

double modified_knockout_query_bound(std::size_t n, double epsilon) {
  detail::require_epsilon(epsilon);
  const double inv = 1.0 / epsilon;
  const double c = std::ceil(inv * std::log(inv));
  const double lg = std::log2(static_cast<double>(n));
  return static_cast<double>(n) + 0.5 * std::pow(lg, 4) * c * c;
}

std::size_t comb_pivot_repetitions(double epsilon, const CombParams& params) {
  detail::require_epsilon(epsilon);
  const double reps = std::floor(params.beta1 * std::log2(1.0 / epsilon));
  return std::max<std::size_t>(static_cast<std::size_t>(reps), 1);
}

std::size_t comb_knockout_repetitions(double epsilon, std::size_t round, const CombParams& params) {
  detail::require_epsilon(epsilon);
  const double reps = std::floor(params.beta2 * std::pow(4.0 / 3.0, static_cast<double>(round)) *
                                 std::log2(1.0 / epsilon));
  return std::max<std::size_t>(static_cast<std::size_t>(reps), 1);
}

}  // namespace advsel
