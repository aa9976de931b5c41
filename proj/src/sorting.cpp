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

#include "advsel/sorting.hpp"

namespace advsel {

std::string_view sort_algorithm_name(SortAlgorithm a) {
  return a == SortAlgorithm::kCompleteSort ? "compl-sort" : "q-sort";
}

std::optional<SortAlgorithm> parse_sort_algorithm(std::string_view name) {
  if (name == "compl-sort") return SortAlgorithm::kCompleteSort;
  if (name == "q-sort") return SortAlgorithm::kQuickSort;
  return std::nullopt;
}

double exact_expected_queries(std::size_t n) {
  // Running prefix sum keeps this O(n).
  double prefix = 0.0;
  double q = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    prefix += q;  // now sum_{i < m} q_i
    q = static_cast<double>(m - 1) + 2.0 * prefix / static_cast<double>(m);
  }
  return q;
}

}  // namespace advsel
