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

#ifndef ADVSEL_SORTING_HPP_
#define ADVSEL_SORTING_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "advsel/algorithms.hpp"
#include "advsel/core.hpp"
#include "advsel/rng.hpp"

namespace advsel {

struct SortResult {
  std::vector<Index> order;  // intended decreasing
  std::uint64_t queries = 0;
};

enum class SortAlgorithm { kCompleteSort, kQuickSort };

std::string_view sort_algorithm_name(SortAlgorithm a);
std::optional<SortAlgorithm> parse_sort_algorithm(std::string_view name);

// Expected comparisons of randomized quicksort on n distinct noiseless inputs:
// q_0 = 0, q_n = n - 1 + (2/n) sum_{i<n} q_i.
double exact_expected_queries(std::size_t n);

// Items ordered by descending round-robin win count, ties in random order.
template <PairwiseComparator C>
SortResult complete_sort(C& cmp, std::span<const Index> items, Rng& rng) {
  const auto start = cmp.query_count();
  std::vector<Index> shuffled(items.begin(), items.end());
  rng.shuffle(std::span<Index>(shuffled));
  auto wins = round_robin_wins(cmp, shuffled);
  std::vector<std::size_t> rank = all_indices(shuffled.size());
  std::stable_sort(rank.begin(), rank.end(),
                   [&](std::size_t a, std::size_t b) { return wins[a] > wins[b]; });
  SortResult result;
  result.order.reserve(rank.size());
  for (std::size_t k : rank) result.order.push_back(shuffled[k]);
  result.queries = cmp.query_count() - start;
  return result;
}

namespace detail {

template <PairwiseComparator C>
void quick_sort_into(C& cmp, std::vector<Index> block, Rng& rng, std::vector<Index>& out) {
  if (block.size() <= 1) {
    out.insert(out.end(), block.begin(), block.end());
    return;
  }
  const std::size_t p = rng.uniform_index(block.size());
  const Index pivot = block[p];
  cmp.announce_pivot(pivot);
  std::vector<Index> above;
  std::vector<Index> below;
  for (std::size_t k = 0; k < block.size(); ++k) {
    if (k == p) continue;
    (cmp.query(block[k], pivot) == block[k] ? above : below).push_back(block[k]);
  }
  cmp.announce_pivot(std::nullopt);
  block.clear();
  block.shrink_to_fit();
  quick_sort_into(cmp, std::move(above), rng, out);
  out.push_back(pivot);
  quick_sort_into(cmp, std::move(below), rng, out);
}

}  // namespace detail

// Randomized quicksort; items that beat the pivot go before it, in encounter order.
template <PairwiseComparator C>
SortResult quick_sort(C& cmp, std::span<const Index> items, Rng& rng) {
  const auto start = cmp.query_count();
  SortResult result;
  result.order.reserve(items.size());
  detail::quick_sort_into(cmp, std::vector<Index>(items.begin(), items.end()), rng, result.order);
  result.queries = cmp.query_count() - start;
  return result;
}

template <PairwiseComparator C>
SortResult run_sort(SortAlgorithm algo, C& cmp, std::span<const Index> items, Rng& rng) {
  if (items.empty()) throw PreconditionError("sorting needs a nonempty item set");
  return algo == SortAlgorithm::kCompleteSort ? complete_sort(cmp, items, rng)
                                              : quick_sort(cmp, items, rng);
}

}  // namespace advsel

#endif  // ADVSEL_SORTING_HPP_
