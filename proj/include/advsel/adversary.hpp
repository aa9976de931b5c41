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

#ifndef ADVSEL_ADVERSARY_HPP_
#define ADVSEL_ADVERSARY_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "advsel/core.hpp"
#include "advsel/rng.hpp"

namespace advsel {

// A complete orientation of all pairs over n items. Frozen once built: the
// non-adaptive comparator commits to every answer before the first query.
class TournamentGraph {
 public:
  // `orient(i, j)` is called once for every i < j and must return i or j.
  template <typename Orient>
  static TournamentGraph build(std::size_t n, Orient&& orient) {
    TournamentGraph g(n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        Index w = orient(i, j);
        if (w != i && w != j) throw ModelViolation("orientation returned an index outside the pair");
        g.set_lower_wins(i, j, w == i);
      }
    }
    return g;
  }

  // Every unordered pair must appear exactly once; forced pairs must point to
  // the larger value.
  static TournamentGraph from_edges(const Instance& instance,
                                    std::span<const std::array<Index, 3>> edges);

  std::size_t size() const { return n_; }
  Index winner(Index i, Index j) const;
  std::size_t out_degree(Index i) const;
  std::vector<std::size_t> out_degrees() const;
  bool is_valid_for(const Instance& instance) const;

 private:
  explicit TournamentGraph(std::size_t n);
  std::size_t bit_of(Index lo, Index hi) const { return lo * n_ + hi; }
  void set_lower_wins(Index lo, Index hi, bool lower_wins);

  std::size_t n_ = 0;
  std::vector<std::uint64_t> bits_;  // bit (lo*n + hi) set iff lo beats hi
};

// Anything that answers comparator queries. Implementations only decide free
// pairs; the session enforces forced outcomes on top.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual Index answer(const Instance& instance, Index i, Index j, const QueryLog& log) = 0;
  // Side channel from pivot-based algorithms; empty clears the hint.
  virtual void announce_pivot(std::optional<Index> /*pivot*/) {}
  virtual bool is_adaptive() const = 0;
};

class GraphAdversary final : public Adversary {
 public:
  explicit GraphAdversary(std::shared_ptr<const TournamentGraph> graph) : graph_(std::move(graph)) {}
  Index answer(const Instance&, Index i, Index j, const QueryLog&) override {
    return graph_->winner(i, j);
  }
  bool is_adaptive() const override { return false; }
  const TournamentGraph& graph() const { return *graph_; }

 private:
  std::shared_ptr<const TournamentGraph> graph_;
};

// Online decision rule with access to the whole transcript so far and to the
// currently announced pivot.
class AdaptiveStrategy final : public Adversary {
 public:
  using Rule = std::function<Index(const Instance&, Index, Index, const QueryLog&,
                                   std::optional<Index> pivot)>;
  explicit AdaptiveStrategy(Rule rule) : rule_(std::move(rule)) {}

  Index answer(const Instance& instance, Index i, Index j, const QueryLog& log) override {
    return rule_(instance, i, j, log, pivot_);
  }
  void announce_pivot(std::optional<Index> pivot) override { pivot_ = pivot; }
  bool is_adaptive() const override { return true; }

 private:
  Rule rule_;
  std::optional<Index> pivot_;
};

// Repeats the first answer given for each unordered pair.
class MemoizingAdversary final : public Adversary {
 public:
  explicit MemoizingAdversary(std::unique_ptr<Adversary> inner) : inner_(std::move(inner)) {}
  Index answer(const Instance& instance, Index i, Index j, const QueryLog& log) override;
  void announce_pivot(std::optional<Index> pivot) override { inner_->announce_pivot(pivot); }
  bool is_adaptive() const override { return inner_->is_adaptive(); }

 private:
  std::unique_ptr<Adversary> inner_;
  std::unordered_map<std::uint64_t, Index> memo_;
};

// Query oracle over one instance. Holds references: the instance and the
// adversary must outlive the session. Single owner; not thread-safe.
class ComparatorSession {
 public:
  ComparatorSession(const Instance& instance, Adversary& adversary)
      : instance_(&instance), adversary_(&adversary) {}

  Index query(Index i, Index j);
  void announce_pivot(std::optional<Index> pivot) { adversary_->announce_pivot(pivot); }

  const Instance& instance() const { return *instance_; }
  const QueryLog& log() const { return log_; }
  QueryLog& log() { return log_; }
  std::uint64_t query_count() const { return log_.count(); }
  // Set when the adversary disagreed with a forced outcome (the forced
  // winner was returned anyway).
  bool violation_detected() const { return violation_; }

 private:
  const Instance* instance_;
  Adversary* adversary_;
  QueryLog log_;
  bool violation_ = false;
};

enum class FreeEdgePolicy { kLargerWins, kSmallerWins, kLowerIndexWins, kSeededRandom };

TournamentGraph build_nonadaptive(const Instance& instance, FreeEdgePolicy policy,
                                  RngSeed seed = {});

struct Construction {
  Instance instance;
  TournamentGraph graph;
  std::optional<Index> special;  // the 0* item of the knock-out hard instance
};

// (1, 0, ..., 0) in random positions; regular tournament, every out-degree (n-1)/2.
Construction lemma_one_construction(std::size_t n, RngSeed seed);
// (2, 1 x m, 0 x m), m = (n-1)/2; regular tournament in which the 2 loses to every 1.
Construction lemma_two_construction(std::size_t n, RngSeed seed);
// Level table of the sequential-selection lower bound, n = r^s, min-wins on free pairs.
Construction sequential_hard_instance(std::size_t r, std::size_t s);
// {3, 2 x q, 1 x q, 0 x q, 0*}, q = (n-2)/3. Modified knock-out ends on 0*
// with constant probability here.
Construction komod_hard_instance(std::size_t n, RngSeed seed);

// Declares the announced pivot the loser of every free query it is part of.
// Free queries without the pivot go to the smaller value, lower index on ties.
std::unique_ptr<AdaptiveStrategy> pivot_killer_strategy();

// Largest n accepted by graph-backed constructions.
inline constexpr std::size_t kMaxGraphSize = std::size_t{1} << 15;

}  // namespace advsel

#endif  // ADVSEL_ADVERSARY_HPP_
