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

#include "advsel/scheffe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "advsel/algorithms.hpp"
#include "advsel/kernels.hpp"

namespace advsel {

namespace {

void require_same_support(std::size_t a, std::size_t b) {
  if (a != b) throw PreconditionError("distributions have different support sizes");
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw PreconditionError("distribution needs a nonempty support");
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) throw PreconditionError("probabilities must be >= 0");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-9) throw PreconditionError("probabilities must sum to 1");
}

double l1_distance(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_support(p.support_size(), q.support_size());
  return kernels::l1_distance(p.probs(), q.probs());
}

SampleSet sample(const DiscreteDistribution& p, std::size_t k, RngSeed seed) {
  const std::size_t m = p.support_size();
  std::vector<double> cdf(m);
  std::partial_sum(p.probs().begin(), p.probs().end(), cdf.begin());
  // Rounding can leave cdf.back() slightly below 1; clamp to the last atom
  // carrying mass.
  std::size_t last = m - 1;
  while (last > 0 && p[last] == 0.0) --last;

  Rng rng(seed);
  SampleSet out;
  out.support_size = m;
  out.samples.reserve(k);
  for (std::size_t s = 0; s < k; ++s) {
    const double u = rng.uniform01();
    auto atom = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    out.samples.push_back(static_cast<std::uint32_t>(std::min(atom, last)));
  }
  return out;
}

ScheffeOutcome scheffe_test(const DiscreteDistribution& p1, const DiscreteDistribution& p2,
                            const SampleSet& samples) {
  require_same_support(p1.support_size(), p2.support_size());
  require_same_support(p1.support_size(), samples.support_size);
  std::vector<std::int32_t> membership(p1.support_size());
  const auto mass = kernels::scheffe_masses(p1.probs(), p2.probs(), membership);
  const double mu =
      samples.k() == 0
          ? 0.0
          : static_cast<double>(kernels::count_members(samples.samples, membership)) /
                static_cast<double>(samples.k());
  ScheffeOutcome out;
  out.set_mass_1 = mass.first;
  out.set_mass_2 = mass.second;
  out.empirical_mass = mu;
  out.winner = std::fabs(mass.first - mu) <= std::fabs(mass.second - mu) ? 0 : 1;
  return out;
}

ScheffeComparator::ScheffeComparator(std::span<const DiscreteDistribution> candidates,
                                     const SampleSet& samples)
    : candidates_(candidates), samples_(&samples) {
  for (const auto& c : candidates_) require_same_support(c.support_size(), samples.support_size);
}

Index ScheffeComparator::query(Index i, Index j) {
  if (i >= candidates_.size() || j >= candidates_.size() || i == j) {
    throw PreconditionError("invalid candidate pair");
  }
  const Index lo = std::min(i, j);
  const Index hi = std::max(i, j);
  ++tests_;
  return scheffe_test(candidates_[lo], candidates_[hi], *samples_).winner == 0 ? lo : hi;
}

ScheffeSelection scheffe_tournament(std::span<const DiscreteDistribution> candidates,
                                    const SampleSet& samples, Rng& rng) {
  if (candidates.empty()) throw PreconditionError("no candidate distributions");
  ScheffeComparator cmp(candidates, samples);
  auto items = all_indices(candidates.size());
  auto r = complete_tournament(cmp, items, rng);
  return ScheffeSelection{r.winner, cmp.query_count()};
}

ScheffeSelection scheffe_quickselect(std::span<const DiscreteDistribution> candidates,
                                     const SampleSet& samples, Rng& rng) {
  if (candidates.empty()) throw PreconditionError("no candidate distributions");
  if (samples.k() == 0) throw PreconditionError("scheffe quick-select needs k >= 1 samples");
  ScheffeComparator cmp(candidates, samples);
  auto items = all_indices(candidates.size());
  auto r = quick_select(cmp, items, rng);
  return ScheffeSelection{r.winner, cmp.query_count()};
}

double scheffe_pair_bound(double min_l1, std::size_t k, double epsilon) {
  return 3.0 * min_l1 + std::sqrt(10.0 * std::log(1.0 / epsilon) / static_cast<double>(k));
}

double scheffe_factor9_bound(double min_l1, std::size_t n, std::size_t k, double epsilon) {
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return 9.0 * min_l1 +
         4.0 * std::sqrt(10.0 * std::log(std::max(pairs, 1.0) / epsilon) / static_cast<double>(k));
}

DiscreteDistribution random_distribution(std::size_t support, Rng& rng) {
  std::vector<double> w(support);
  double total = 0.0;
  for (double& x : w) {
    x = -std::log1p(-rng.uniform01());
    total += x;
  }
  for (double& x : w) x /= total;
  return DiscreteDistribution(std::move(w));
}

DiscreteDistribution mix_towards_atom(const DiscreteDistribution& p, std::size_t atom,
                                      double radius) {
  const double reach = 2.0 * (1.0 - p[atom]);
  if (!(radius >= 0.0) || radius > reach) throw PreconditionError("radius out of reach of atom");
  const double lambda = reach == 0.0 ? 0.0 : radius / reach;
  std::vector<double> q(p.probs().begin(), p.probs().end());
  for (double& x : q) x *= (1.0 - lambda);
  q[atom] += lambda;
  return DiscreteDistribution(std::move(q));
}

CandidateSuite planted_suite(std::size_t support, std::size_t n, double nearest_radius, Rng& rng) {
  if (n == 0 || support < 2) throw PreconditionError("planted suite needs n >= 1, support >= 2");
  DiscreteDistribution p0 = random_distribution(support, rng);
  const auto atoms = p0.probs();
  const std::size_t far_atom =
      static_cast<std::size_t>(std::min_element(atoms.begin(), atoms.end()) - atoms.begin());

  std::vector<DiscreteDistribution> cands;
  cands.reserve(n);
  cands.push_back(mix_towards_atom(p0, far_atom, nearest_radius));
  const std::size_t planted = (n - 1) / 2;
  for (std::size_t c = 0; c < planted; ++c) {
    std::size_t atom = rng.uniform_index(support);
    const double lo = 1.5 * nearest_radius;
    if (2.0 * (1.0 - p0[atom]) <= lo) atom = far_atom;
    const double hi = std::min(1.0, 2.0 * (1.0 - p0[atom]));
    const double radius = hi > lo ? lo + (hi - lo) * rng.uniform01() : hi;
    cands.push_back(mix_towards_atom(p0, atom, radius));
  }
  while (cands.size() < n) {
    auto d = random_distribution(support, rng);
    if (l1_distance(d, p0) > 1.5 * nearest_radius) cands.push_back(std::move(d));
  }
  rng.shuffle(std::span<DiscreteDistribution>(cands));
  return CandidateSuite{std::move(p0), std::move(cands)};
}

}  // namespace advsel
