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

// Maximum selection under threshold-adversarial comparators. Every algorithm
// sees the items only through `query`, so the same code runs against a
// ComparatorSession or any other pairwise oracle (e.g. Scheffe tests).

#ifndef ADVSEL_ALGORITHMS_HPP_
#define ADVSEL_ALGORITHMS_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "advsel/adversary.hpp"
#include "advsel/core.hpp"
#include "advsel/rng.hpp"

namespace advsel {

template <typename C>
concept PairwiseComparator = requires(C& c, Index i, Index j, std::optional<Index> p) {
  { c.query(i, j) } -> std::convertible_to<Index>;
  { c.query_count() } -> std::convertible_to<std::uint64_t>;
  c.announce_pivot(p);
};

struct SelectionResult {
  Index winner = 0;
  std::uint64_t queries = 0;
  std::uint64_t rounds = 0;
  // |X| at the start of every round (combined_select, quick_select, modified_knockout).
  std::vector<std::size_t> round_sizes;
};

enum class Algorithm { kComplete, kSequential, kModifiedKnockout, kQuickSelect, kCombined };

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

// n1 = ceil((1/eps) ln(1/eps) log2 n), at least 2.
std::size_t knockout_save_count(std::size_t n, double epsilon);
// Upper bound on modified knock-out queries: n + 1/2 log2^4 n ceil((1/eps) ln(1/eps))^2.
double modified_knockout_query_bound(std::size_t n, double epsilon);

struct CombParams {
  double beta1 = 9.0;
  double beta2 = 25.0;
  double shrink_threshold = 2.0 / 3.0;
  double win_fraction = 3.0 / 4.0;
};

// floor(beta1 log2(1/eps)), clamped to >= 1.
std::size_t comb_pivot_repetitions(double epsilon, const CombParams& params = {});
// floor(beta2 (4/3)^round log2(1/eps)), clamped to >= 1; round is 1-based.
std::size_t comb_knockout_repetitions(double epsilon, std::size_t round,
                                      const CombParams& params = {});

namespace detail {

inline void require_items(std::span<const Index> items) {
  if (items.empty()) throw PreconditionError("selection needs a nonempty item set");
}

inline void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0, 1)");
}

// Uniformly random position among the maxima of `scores`.
template <typename T>
std::size_t random_argmax(std::span<const T> scores, Rng& rng) {
  const T best = *std::max_element(scores.begin(), scores.end());
  std::size_t ties = 0;
  for (const T& s : scores) ties += (s == best);
  std::size_t pick = rng.uniform_index(ties);
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (scores[k] == best && pick-- == 0) return k;
  }
  return 0;
}

}  // namespace detail

// Round-robin win counts over `items`, one query per unordered pair, in the
// order (a, b) for a before b in `items`.
template <PairwiseComparator C>
std::vector<std::size_t> round_robin_wins(C& cmp, std::span<const Index> items) {
  std::vector<std::size_t> wins(items.size(), 0);
  for (std::size_t a = 0; a < items.size(); ++a) {
    for (std::size_t b = a + 1; b < items.size(); ++b) {
      Index w = cmp.query(items[a], items[b]);
      ++wins[w == items[a] ? a : b];
    }
  }
  return wins;
}

template <PairwiseComparator C>
SelectionResult complete_tournament(C& cmp, std::span<const Index> items, Rng& rng) {
  detail::require_items(items);
  const auto start = cmp.query_count();
  auto wins = round_robin_wins(cmp, items);
  const std::size_t k = detail::random_argmax(std::span<const std::size_t>(wins), rng);
  return SelectionResult{items[k], cmp.query_count() - start, 1, {items.size()}};
}

// Sequential selection with an explicit visit order.
template <PairwiseComparator C>
SelectionResult sequential_select_in_order(C& cmp, std::span<const Index> order) {
  detail::require_items(order);
  const auto start = cmp.query_count();
  Index survivor = order.front();
  for (Index next : order.subspan(1)) survivor = cmp.query(next, survivor);
  return SelectionResult{survivor, cmp.query_count() - start, order.size() - 1, {}};
}

template <PairwiseComparator C>
SelectionResult sequential_select(C& cmp, std::span<const Index> items, Rng& rng) {
  detail::require_items(items);
  std::vector<Index> order(items.begin(), items.end());
  rng.shuffle(std::span<Index>(order));
  return sequential_select_in_order(cmp, order);
}

// One knock-out round: random pairing, winners advance, an odd leftover gets a bye.
template <PairwiseComparator C>
std::vector<Index> knockout_round(C& cmp, std::span<const Index> items, Rng& rng) {
  std::vector<Index> order(items.begin(), items.end());
  rng.shuffle(std::span<Index>(order));
  std::vector<Index> survivors;
  survivors.reserve((order.size() + 1) / 2);
  std::size_t k = 0;
  for (; k + 1 < order.size(); k += 2) survivors.push_back(cmp.query(order[k], order[k + 1]));
  if (k < order.size()) survivors.push_back(order[k]);
  return survivors;
}

template <PairwiseComparator C>
SelectionResult modified_knockout(C& cmp, std::span<const Index> items, double epsilon, Rng& rng) {
  detail::require_epsilon(epsilon);
  detail::require_items(items);
  const auto start = cmp.query_count();
  const std::size_t n1 = knockout_save_count(items.size(), epsilon);

  std::vector<Index> current(items.begin(), items.end());
  std::vector<Index> saved;
  SelectionResult result;
  while (current.size() > n1) {
    result.round_sizes.push_back(current.size());
    // Partial Fisher-Yates on a scratch copy: n1 distinct picks, X untouched.
    std::vector<Index> scratch = current;
    for (std::size_t k = 0; k < n1; ++k) {
      std::size_t pick = k + rng.uniform_index(scratch.size() - k);
      std::swap(scratch[k], scratch[pick]);
      saved.push_back(scratch[k]);
    }
    current = knockout_round(cmp, current, rng);
    ++result.rounds;
  }

  // X and Y may share indices; a pair is never compared with itself.
  std::vector<Index> finalists;
  std::unordered_set<Index> seen;
  for (const auto* pool : {&current, &saved}) {
    for (Index i : *pool) {
      if (seen.insert(i).second) finalists.push_back(i);
    }
  }
  auto final_round = complete_tournament(cmp, finalists, rng);
  result.round_sizes.push_back(finalists.size());
  result.winner = final_round.winner;
  result.rounds += 1;
  result.queries = cmp.query_count() - start;
  return result;
}

// Random pivot against every other item; keep those that beat it, or the
// pivot alone if nobody did.
template <PairwiseComparator C>
std::vector<Index> quickselect_round(C& cmp, std::span<const Index> items, Rng& rng) {
  if (items.size() <= 1) return std::vector<Index>(items.begin(), items.end());
  const std::size_t p = rng.uniform_index(items.size());
  const Index pivot = items[p];
  cmp.announce_pivot(pivot);
  std::vector<Index> beat;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k == p) continue;
    if (cmp.query(items[k], pivot) == items[k]) beat.push_back(items[k]);
  }
  cmp.announce_pivot(std::nullopt);
  if (beat.empty()) beat.push_back(pivot);
  return beat;
}

template <PairwiseComparator C>
SelectionResult quick_select(C& cmp, std::span<const Index> items, Rng& rng) {
  detail::require_items(items);
  const auto start = cmp.query_count();
  SelectionResult result;
  std::vector<Index> current(items.begin(), items.end());
  while (current.size() > 1) {
    result.round_sizes.push_back(current.size());
    current = quickselect_round(cmp, current, rng);
    ++result.rounds;
  }
  result.winner = current.front();
  result.queries = cmp.query_count() - start;
  return result;
}

template <PairwiseComparator C>
SelectionResult combined_select(C& cmp, std::span<const Index> items, double epsilon, Rng& rng,
                                const CombParams& params = {}) {
  detail::require_epsilon(epsilon);
  detail::require_items(items);
  const auto start = cmp.query_count();
  SelectionResult result;
  std::vector<Index> current(items.begin(), items.end());
  const std::size_t pivot_reps = comb_pivot_repetitions(epsilon, params);

  std::size_t round = 0;
  while (current.size() > 1) {
    ++round;
    const std::size_t round_start = current.size();
    result.round_sizes.push_back(round_start);
    for (std::size_t r = 0; r < pivot_reps && current.size() > 1; ++r) {
      current = quickselect_round(cmp, current, rng);
    }
    if (static_cast<double>(current.size()) >
        params.shrink_threshold * static_cast<double>(round_start)) {
      const std::size_t ko_reps = comb_knockout_repetitions(epsilon, round, params);
      // Win tally over repeated random pairings of the same fixed multiset.
      std::vector<std::size_t> position_of;
      Index max_index = *std::max_element(current.begin(), current.end());
      position_of.assign(max_index + 1, 0);
      for (std::size_t k = 0; k < current.size(); ++k) position_of[current[k]] = k;
      std::vector<std::size_t> wins(current.size(), 0);
      for (std::size_t r = 0; r < ko_reps; ++r) {
        for (Index w : knockout_round(cmp, current, rng)) ++wins[position_of[w]];
      }
      const double needed = params.win_fraction * static_cast<double>(ko_reps);
      std::vector<Index> keep;
      for (std::size_t k = 0; k < current.size(); ++k) {
        if (static_cast<double>(wins[k]) > needed) keep.push_back(current[k]);
      }
      if (keep.empty()) {
        keep.push_back(current[detail::random_argmax(std::span<const std::size_t>(wins), rng)]);
      }
      current = std::move(keep);
    }
  }
  result.rounds = round;
  result.winner = current.front();
  result.queries = cmp.query_count() - start;
  return result;
}

// Dispatch by algorithm id; epsilon is ignored by algorithms without one.
template <PairwiseComparator C>
SelectionResult run_selection(Algorithm algo, C& cmp, std::span<const Index> items, double epsilon,
                              Rng& rng) {
  switch (algo) {
    case Algorithm::kComplete:
      return complete_tournament(cmp, items, rng);
    case Algorithm::kSequential:
      return sequential_select(cmp, items, rng);
    case Algorithm::kModifiedKnockout:
      return modified_knockout(cmp, items, epsilon, rng);
    case Algorithm::kQuickSelect:
      return quick_select(cmp, items, rng);
    case Algorithm::kCombined:
      return combined_select(cmp, items, epsilon, rng);
  }
  throw PreconditionError("unknown algorithm");
}

}  // namespace advsel

#endif  // ADVSEL_ALGORITHMS_HPP_
