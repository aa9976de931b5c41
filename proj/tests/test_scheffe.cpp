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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "advsel/scheffe.hpp"

namespace advsel {
namespace {

SampleSet all_at(std::uint32_t atom, std::size_t k, std::size_t support) {
  return SampleSet{std::vector<std::uint32_t>(k, atom), support};
}

double naive_l1(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.support_size(); ++i) s += std::fabs(p[i] - q[i]);
  return s;
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(DiscreteDistribution({}), PreconditionError);
  CHECK_THROWS_AS(DiscreteDistribution({0.5, 0.6}), PreconditionError);
  CHECK_THROWS_AS(DiscreteDistribution({1.5, -0.5}), PreconditionError);
  CHECK_NOTHROW(DiscreteDistribution({0.25, 0.75}));
}

TEST_CASE("l1 distance") {
  const DiscreteDistribution p({0.5, 0.5});
  const DiscreteDistribution q({0.75, 0.25});
  CHECK(l1_distance(p, p) == 0.0);
  CHECK(l1_distance(p, q) == doctest::Approx(0.5));
  CHECK(l1_distance(DiscreteDistribution({1, 0, 0}), DiscreteDistribution({0, 0, 1})) == 2.0);
  CHECK_THROWS_AS(l1_distance(p, DiscreteDistribution({1, 0, 0})), PreconditionError);

  Rng rng(RngSeed{4, 0});
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = random_distribution(17, rng);
    const auto b = random_distribution(17, rng);
    const auto c = random_distribution(17, rng);
    CHECK(l1_distance(a, b) == doctest::Approx(naive_l1(a, b)).epsilon(1e-12));
    CHECK(l1_distance(a, b) == doctest::Approx(l1_distance(b, a)).epsilon(1e-12));
    CHECK(l1_distance(a, c) <= l1_distance(a, b) + l1_distance(b, c) + 1e-12);
  }
}

TEST_CASE("sampling") {
  const DiscreteDistribution point({0.0, 1.0, 0.0});
  const auto s = sample(point, 500, RngSeed{1, 0});
  CHECK(std::all_of(s.samples.begin(), s.samples.end(), [](std::uint32_t x) { return x == 1; }));
  CHECK(sample(point, 0, RngSeed{}).k() == 0);
  const auto coin = sample(DiscreteDistribution({0.5, 0.5}), 100000, RngSeed{2, 0});
  const double zeros = static_cast<double>(std::count(coin.samples.begin(), coin.samples.end(), 0u));
  CHECK(std::fabs(zeros / 1e5 - 0.5) < 0.01);
  const auto again = sample(DiscreteDistribution({0.5, 0.5}), 100000, RngSeed{2, 0});
  CHECK(again.samples == coin.samples);
}

TEST_CASE("scheffe test by hand") {
  const DiscreteDistribution p1({1.0, 0.0});
  const DiscreteDistribution p2({0.0, 1.0});
  const auto out = scheffe_test(p1, p2, all_at(0, 10, 2));
  CHECK(out.winner == 0);
  CHECK(out.set_mass_1 == 1.0);
  CHECK(out.set_mass_2 == 0.0);
  CHECK(out.empirical_mass == 1.0);
  CHECK(scheffe_test(p2, p1, all_at(0, 10, 2)).winner == 1);

  const auto tie = scheffe_test(p1, p1, all_at(1, 3, 2));
  CHECK(tie.winner == 0);
  CHECK(tie.set_mass_1 == 0.0);
  CHECK(tie.set_mass_2 == 0.0);
  CHECK_THROWS_AS(scheffe_test(p1, DiscreteDistribution({1, 0, 0}), all_at(0, 1, 2)),
                  PreconditionError);
}

TEST_CASE("tournament and quick-select basics") {
  const std::vector<DiscreteDistribution> one{DiscreteDistribution({0.5, 0.5})};
  const auto samples = all_at(0, 10, 2);
  Rng rng(RngSeed{1, 0});
  auto t = scheffe_tournament(one, samples, rng);
  CHECK(t.chosen == 0);
  CHECK(t.tests == 0);
  CHECK(scheffe_quickselect(one, samples, rng).chosen == 0);
  const std::vector<DiscreteDistribution> none;
  CHECK_THROWS_AS(scheffe_tournament(none, samples, rng), PreconditionError);

  Rng gen(RngSeed{2, 0});
  std::vector<DiscreteDistribution> many;
  for (int c = 0; c < 12; ++c) many.push_back(random_distribution(8, gen));
  const auto s8 = sample(many[3], 2000, RngSeed{3, 0});
  CHECK(scheffe_tournament(many, s8, rng).tests == 66);
}

TEST_CASE("the true distribution wins with abundant samples") {
  Rng gen(RngSeed{10, 0});
  const auto p0 = random_distribution(10, gen);
  std::vector<DiscreteDistribution> cands{p0};
  for (int c = 0; c < 9; ++c) cands.push_back(random_distribution(10, gen));
  const auto samples = sample(p0, 200000, RngSeed{11, 0});
  Rng rng(RngSeed{12, 0});
  CHECK(scheffe_tournament(cands, samples, rng).chosen == 0);

  std::vector<double> far(10, 0.0);
  const auto low = std::min_element(p0.probs().begin(), p0.probs().end()) - p0.probs().begin();
  far[static_cast<std::size_t>(low)] = 1.0;
  int wins = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const std::vector<DiscreteDistribution> two{DiscreteDistribution(far), p0};
    Rng r(RngSeed{s, 0});
    wins += scheffe_quickselect(two, sample(p0, 10000, RngSeed{s, 1}), r).chosen == 1;
  }
  CHECK(wins == 50);
}

// Pair guarantee: the test's winner is within 3 min + sqrt(10 ln(1/eps)/k)
// with probability at least 1 - eps.
TEST_CASE("pairwise guarantee holds statistically") {
  const double eps = 0.1;
  const std::size_t k = 400;
  Rng gen(RngSeed{21, 0});
  int violations = 0;
  const int trials = 1000;
  for (int rep = 0; rep < trials; ++rep) {
    const auto p0 = random_distribution(6, gen);
    const auto a = random_distribution(6, gen);
    const auto b = mix_towards_atom(p0, gen.uniform_index(6), 0.05);
    const auto samples = sample(p0, k, RngSeed{gen.next(), 0});
    const auto out = scheffe_test(a, b, samples);
    const double chosen = l1_distance(out.winner == 0 ? a : b, p0);
    const double best = std::min(l1_distance(a, p0), l1_distance(b, p0));
    violations += chosen > scheffe_pair_bound(best, k, eps);
  }
  CHECK(static_cast<double>(violations) / trials <= eps);
}

TEST_CASE("bounds") {
  CHECK(scheffe_pair_bound(0.1, 10000, 0.1) ==
        doctest::Approx(0.3 + std::sqrt(10.0 * std::log(10.0) / 10000.0)));
  CHECK(scheffe_factor9_bound(0.1, 50, 10000, 0.05) ==
        doctest::Approx(0.9 + 4.0 * std::sqrt(10.0 * std::log(1225.0 / 0.05) / 10000.0)));
}

TEST_CASE("planted suite geometry") {
  Rng rng(RngSeed{31, 0});
  const auto p = random_distribution(20, rng);
  const auto m = mix_towards_atom(p, 3, 0.25);
  CHECK(l1_distance(m, p) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK_THROWS_AS(mix_towards_atom(p, 3, 2.5), PreconditionError);

  for (int rep = 0; rep < 20; ++rep) {
    const auto suite = planted_suite(20, 50, 0.1, rng);
    REQUIRE(suite.candidates.size() == 50);
    std::vector<double> d;
    for (const auto& c : suite.candidates) d.push_back(l1_distance(c, suite.p0));
    std::sort(d.begin(), d.end());
    CHECK(d[0] == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(d[1] >= 0.15 - 1e-9);
  }
}

}  // namespace
}  // namespace advsel
