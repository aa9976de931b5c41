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

// Hypothesis selection over finite-support distributions: the Scheffe test as
// a pairwise comparator, the round-robin Scheffe tournament, and quick-select
// driven by Scheffe tests.

#ifndef ADVSEL_SCHEFFE_HPP_
#define ADVSEL_SCHEFFE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "advsel/core.hpp"
#include "advsel/rng.hpp"

namespace advsel {

class DiscreteDistribution {
 public:
  // Entries must be finite, non-negative and sum to 1 within 1e-9.
  explicit DiscreteDistribution(std::vector<double> probs);

  std::size_t support_size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t atom) const { return probs_[atom]; }

 private:
  std::vector<double> probs_;
};

struct SampleSet {
  std::vector<std::uint32_t> samples;
  std::size_t support_size = 0;

  std::size_t k() const { return samples.size(); }
};

struct ScheffeOutcome {
  Index winner = 0;  // 0: first argument, 1: second argument
  double set_mass_1 = 0.0;
  double set_mass_2 = 0.0;
  double empirical_mass = 0.0;
};

double l1_distance(const DiscreteDistribution& p, const DiscreteDistribution& q);

// k i.i.d. draws by inverse CDF over the support order.
SampleSet sample(const DiscreteDistribution& p, std::size_t k, RngSeed seed);

// S = {x : p1(x) > p2(x)}; p1 wins iff |p1(S) - mu_S| <= |p2(S) - mu_S|.
ScheffeOutcome scheffe_test(const DiscreteDistribution& p1, const DiscreteDistribution& p2,
                            const SampleSet& samples);

// Pairwise comparator over a candidate list. Each unordered pair is evaluated
// with the lower index as first argument, so the induced tournament is fixed
// once the samples are drawn.
class ScheffeComparator {
 public:
  ScheffeComparator(std::span<const DiscreteDistribution> candidates, const SampleSet& samples);

  Index query(Index i, Index j);
  void announce_pivot(std::optional<Index>) {}
  std::uint64_t query_count() const { return tests_; }

 private:
  std::span<const DiscreteDistribution> candidates_;
  const SampleSet* samples_;
  std::uint64_t tests_ = 0;
};

struct ScheffeSelection {
  Index chosen = 0;
  std::uint64_t tests = 0;
};

ScheffeSelection scheffe_tournament(std::span<const DiscreteDistribution> candidates,
                                    const SampleSet& samples, Rng& rng);
ScheffeSelection scheffe_quickselect(std::span<const DiscreteDistribution> candidates,
                                     const SampleSet& samples, Rng& rng);

// 3 * min_l1 + sqrt(10 ln(1/eps) / k)
double scheffe_pair_bound(double min_l1, std::size_t k, double epsilon);
// 9 * min_l1 + 4 sqrt(10 ln(C(n,2)/eps) / k)
double scheffe_factor9_bound(double min_l1, std::size_t n, std::size_t k, double epsilon);

// Normalized i.i.d. Exp(1) draws: a flat Dirichlet vector.
DiscreteDistribution random_distribution(std::size_t support, Rng& rng);

// (1 - lambda) p + lambda * e_atom with lambda chosen so the l1 distance to p is
// `radius`. Requires radius <= 2 (1 - p[atom]).
DiscreteDistribution mix_towards_atom(const DiscreteDistribution& p, std::size_t atom,
                                      double radius);

struct CandidateSuite {
  DiscreteDistribution p0;
  std::vector<DiscreteDistribution> candidates;
};

// Planted suite: one candidate at exactly `nearest_radius` from p0, half of the
// rest planted at radii in [1.5 * nearest_radius, 1], the others flat random
// distributions farther than nearest_radius. Order is shuffled.
CandidateSuite planted_suite(std::size_t support, std::size_t n, double nearest_radius, Rng& rng);

}  // namespace advsel

#endif  // ADVSEL_SCHEFFE_HPP_
