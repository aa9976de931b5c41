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

#include "advsel/adversary.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace advsel {

namespace {

void check_graph_size(std::size_t n) {
  if (n > kMaxGraphSize) {
    throw PreconditionError("tournament graph too large: n=" + std::to_string(n));
  }
}

std::uint64_t pair_key(Index i, Index j) {
  auto lo = static_cast<std::uint64_t>(std::min(i, j));
  auto hi = static_cast<std::uint64_t>(std::max(i, j));
  return (lo << 32) | hi;
}

// Circulant regular tournament over ring positions: position p beats the next
// (n-1)/2 positions. Ring position p is placed at index perm[p].
Construction circulant_construction(const std::vector<double>& ring, RngSeed seed) {
  const std::size_t n = ring.size();
  std::vector<Index> perm = all_indices(n);
  Rng rng(seed);
  rng.shuffle(std::span<Index>(perm));
  std::vector<double> values(n);
  std::vector<std::size_t> position(n);
  for (std::size_t p = 0; p < n; ++p) {
    values[perm[p]] = ring[p];
    position[perm[p]] = p;
  }
  const std::size_t half = (n - 1) / 2;
  Instance instance(std::move(values));
  auto graph = TournamentGraph::build(n, [&](Index a, Index b) {
    std::size_t forward = (position[b] + n - position[a]) % n;
    return (forward >= 1 && forward <= half) ? a : b;
  });
  return Construction{std::move(instance), std::move(graph), std::nullopt};
}

void require_odd(std::size_t n) {
  if (n < 3 || n % 2 == 0) throw PreconditionError("construction needs odd n >= 3");
  check_graph_size(n);
}

}  // namespace

TournamentGraph::TournamentGraph(std::size_t n) : n_(n), bits_((n * n + 63) / 64, 0) {}

void TournamentGraph::set_lower_wins(Index lo, Index hi, bool lower_wins) {
  const std::size_t b = bit_of(lo, hi);
  const std::uint64_t mask = std::uint64_t{1} << (b % 64);
  if (lower_wins) {
    bits_[b / 64] |= mask;
  } else {
    bits_[b / 64] &= ~mask;
  }
}

Index TournamentGraph::winner(Index i, Index j) const {
  if (i >= n_ || j >= n_ || i == j) throw PreconditionError("invalid pair for tournament graph");
  const Index lo = std::min(i, j);
  const Index hi = std::max(i, j);
  const std::size_t b = bit_of(lo, hi);
  return ((bits_[b / 64] >> (b % 64)) & 1U) ? lo : hi;
}

std::size_t TournamentGraph::out_degree(Index i) const {
  std::size_t d = 0;
  for (Index j = 0; j < n_; ++j) {
    if (j != i && winner(i, j) == i) ++d;
  }
  return d;
}

std::vector<std::size_t> TournamentGraph::out_degrees() const {
  std::vector<std::size_t> d(n_, 0);
  for (Index i = 0; i < n_; ++i) {
    for (Index j = i + 1; j < n_; ++j) ++d[winner(i, j)];
  }
  return d;
}

bool TournamentGraph::is_valid_for(const Instance& instance) const {
  if (instance.size() != n_) return false;
  for (Index i = 0; i < n_; ++i) {
    for (Index j = i + 1; j < n_; ++j) {
      auto forced = forced_winner(instance, i, j);
      if (forced && *forced != winner(i, j)) return false;
    }
  }
  return true;
}

TournamentGraph TournamentGraph::from_edges(const Instance& instance,
                                            std::span<const std::array<Index, 3>> edges) {
  const std::size_t n = instance.size();
  check_graph_size(n);
  std::vector<int> orient(n * n, -1);  // winner per (lo, hi), -1 = unset
  for (const auto& [a, b, w] : edges) {
    if (a >= n || b >= n || a == b) throw InputError("explicit edge has an invalid pair");
    if (w != a && w != b) throw InputError("explicit edge winner is not an endpoint");
    const Index lo = std::min(a, b);
    const Index hi = std::max(a, b);
    int& slot = orient[lo * n + hi];
    if (slot != -1) throw InputError("explicit edges list a pair twice");
    slot = static_cast<int>(w == lo ? 0 : 1);
    auto forced = forced_winner(instance, a, b);
    if (forced && *forced != w) {
      throw InputError("explicit edge contradicts a forced comparison (" + std::to_string(a) +
                       "," + std::to_string(b) + ")");
    }
  }
  return build(n, [&](Index i, Index j) {
    int slot = orient[i * n + j];
    if (slot == -1) throw InputError("explicit edges do not cover every pair");
    return slot == 0 ? i : j;
  });
}

Index MemoizingAdversary::answer(const Instance& instance, Index i, Index j, const QueryLog& log) {
  auto key = pair_key(i, j);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Index w = inner_->answer(instance, i, j, log);
  memo_.emplace(key, w);
  return w;
}

Index ComparatorSession::query(Index i, Index j) {
  auto forced = forced_winner(*instance_, i, j);
  Index w = adversary_->answer(*instance_, i, j, log_);
  if (w != i && w != j) throw ModelViolation("adversary answered outside the queried pair");
  if (forced && *forced != w) {
    violation_ = true;
    w = *forced;
  }
  log_.append(i, j, w);
  return w;
}

TournamentGraph build_nonadaptive(const Instance& instance, FreeEdgePolicy policy, RngSeed seed) {
  check_graph_size(instance.size());
  Rng rng(seed);
  return TournamentGraph::build(instance.size(), [&](Index i, Index j) {
    if (auto forced = forced_winner(instance, i, j)) return *forced;
    const double vi = instance.value(i);
    const double vj = instance.value(j);
    switch (policy) {
      case FreeEdgePolicy::kLargerWins:
        return vi == vj ? i : (vi > vj ? i : j);
      case FreeEdgePolicy::kSmallerWins:
        return vi == vj ? i : (vi < vj ? i : j);
      case FreeEdgePolicy::kLowerIndexWins:
        return i;
      case FreeEdgePolicy::kSeededRandom:
        return rng.coin() ? i : j;
    }
    return i;
  });
}

Construction lemma_one_construction(std::size_t n, RngSeed seed) {
  require_odd(n);
  std::vector<double> ring(n, 0.0);
  ring[0] = 1.0;
  return circulant_construction(ring, seed);
}

Construction lemma_two_construction(std::size_t n, RngSeed seed) {
  require_odd(n);
  // Ring order 2, 0 x m, 1 x m: the 2 beats the m zeros after it, and each 1
  // reaches around the ring to beat the 2.
  const std::size_t m = (n - 1) / 2;
  std::vector<double> ring;
  ring.reserve(n);
  ring.push_back(2.0);
  ring.insert(ring.end(), m, 0.0);
  ring.insert(ring.end(), m, 1.0);
  return circulant_construction(ring, seed);
}

Construction sequential_hard_instance(std::size_t r, std::size_t s) {
  if (r < 2 || s < 1) throw PreconditionError("sequential hard instance needs r >= 2, s >= 1");
  std::size_t n = 1;
  for (std::size_t k = 0; k < s; ++k) {
    if (n > kMaxGraphSize / r) throw PreconditionError("r^s exceeds the graph size budget");
    n *= r;
  }
  // 1-based position i holds value m for r^(s-m-1) < i <= r^(s-m); value s at i = 1.
  std::vector<double> values(n);
  values[0] = static_cast<double>(s);
  std::size_t lo = 1;
  for (std::size_t m = s; m-- > 0;) {
    const std::size_t hi = lo * r;
    for (std::size_t i = lo + 1; i <= hi; ++i) values[i - 1] = static_cast<double>(m);
    lo = hi;
  }
  Instance instance(std::move(values));
  auto graph = build_nonadaptive(instance, FreeEdgePolicy::kSmallerWins);
  return Construction{std::move(instance), std::move(graph), std::nullopt};
}

Construction komod_hard_instance(std::size_t n, RngSeed seed) {
  if (n < 5 || (n - 2) % 3 != 0) throw PreconditionError("komod hard instance needs (n-2) % 3 == 0");
  check_graph_size(n);
  const std::size_t q = (n - 2) / 3;
  std::vector<double> layout;
  layout.reserve(n);
  layout.push_back(3.0);
  layout.insert(layout.end(), q, 2.0);
  layout.insert(layout.end(), q, 1.0);
  layout.insert(layout.end(), q, 0.0);
  layout.push_back(0.0);  // 0*

  std::vector<Index> perm = all_indices(n);
  Rng rng(seed);
  rng.shuffle(std::span<Index>(perm));
  std::vector<double> values(n);
  for (std::size_t p = 0; p < n; ++p) values[perm[p]] = layout[p];
  const Index star = perm[n - 1];
  Instance instance(std::move(values));

  // Position of each item inside its block of equal values. Ties are oriented
  // as a near-regular circulant: a transitive order would hand the top 1 more
  // final-round wins than 0*.
  std::vector<std::size_t> block_pos(n);
  for (std::size_t p = 1; p < n - 1; ++p) block_pos[perm[p]] = (p - 1) % q;
  auto block_winner = [&](Index i, Index j) -> Index {
    const std::size_t d = (block_pos[j] + q - block_pos[i]) % q;
    if (2 * d == q) return block_pos[i] < block_pos[j] ? i : j;
    return 2 * d < q ? i : j;
  };

  auto graph = TournamentGraph::build(n, [&](Index i, Index j) -> Index {
    if (auto forced = forced_winner(instance, i, j)) return *forced;
    const double vi = instance.value(i);
    const double vj = instance.value(j);
    if (i == star || j == star) {
      // 0* against a 1 or a plain 0 (the 2s are forced).
      return i == star ? i : j;
    }
    if (vi == vj) return block_winner(i, j);
    const double hi = std::max(vi, vj);
    const Index hi_idx = vi > vj ? i : j;
    const Index lo_idx = vi > vj ? j : i;
    // 1 over 0, 1 over 2, 2 over 3: the smaller side wins except 1 vs 0.
    if (hi == 1.0) return hi_idx;
    return lo_idx;
  });
  return Construction{std::move(instance), std::move(graph), star};
}

std::unique_ptr<AdaptiveStrategy> pivot_killer_strategy() {
  return std::make_unique<AdaptiveStrategy>(
      [](const Instance& instance, Index i, Index j, const QueryLog&,
         std::optional<Index> pivot) -> Index {
        if (auto forced = forced_winner(instance, i, j)) return *forced;
        if (pivot && (*pivot == i || *pivot == j)) return *pivot == i ? j : i;
        const double vi = instance.value(i);
        const double vj = instance.value(j);
        if (vi != vj) return vi < vj ? i : j;
        return std::min(i, j);
      });
}

}  // namespace advsel
