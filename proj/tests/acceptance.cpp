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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed here and never loosened at run time.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "advsel/adversary.hpp"
#include "advsel/algorithms.hpp"
#include "advsel/harness.hpp"
#include "advsel/scheffe.hpp"
#include "advsel/sorting.hpp"

namespace advsel {
namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

double binom2(std::size_t n) { return static_cast<double>(n) * static_cast<double>(n - 1) / 2.0; }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

TrialConfig make_config(const std::string& algo, const std::string& gen, const std::string& adversary,
                        std::uint64_t trials, double t, std::uint64_t seed) {
  TrialConfig c;
  c.algorithm = algo;
  c.instance = InstanceSource{std::nullopt, gen};
  if (!adversary.empty()) c.adversary = adversary_from_string(adversary);
  c.trials = trials;
  c.t = t;
  c.epsilon = 0.1;
  c.seed = RngSeed{seed, 0};
  return c;
}

// 1. Every instance over {0,1,2} with n <= 4, every valid orientation, seeds 0..255.
Verdict exhaustive_two_approximation() {
  std::uint64_t runs = 0;
  std::uint64_t failures = 0;
  std::uint64_t graphs = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= 3;
    const std::size_t pairs = n * (n - 1) / 2;
    const auto items = all_indices(n);
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<double> v(n);
      std::size_t c = code;
      for (double& x : v) {
        x = static_cast<double>(c % 3);
        c /= 3;
      }
      const Instance inst(v);
      for (std::size_t mask = 0; mask < (std::size_t{1} << pairs); ++mask) {
        std::size_t bit = 0;
        auto g = TournamentGraph::build(n, [&](Index i, Index j) { return (mask >> bit++) & 1 ? i : j; });
        if (!g.is_valid_for(inst)) continue;
        ++graphs;
        GraphAdversary adv(std::make_shared<const TournamentGraph>(std::move(g)));
        for (std::uint64_t seed = 0; seed < 256; ++seed) {
          Rng rng(RngSeed{seed, 0});
          {
            ComparatorSession s(inst, adv);
            failures += !is_t_approx(v[complete_tournament(s, items, rng).winner], inst, 2.0);
          }
          {
            ComparatorSession s(inst, adv);
            failures += !is_t_approx(v[quick_select(s, items, rng).winner], inst, 2.0);
          }
          for (auto algo : {SortAlgorithm::kQuickSort, SortAlgorithm::kCompleteSort}) {
            ComparatorSession s(inst, adv);
            failures += !is_t_sorted(values_in_order(inst, run_sort(algo, s, items, rng).order), 2.0);
          }
          runs += 4;
        }
      }
    }
  }
  return {failures == 0, std::to_string(graphs) + " valid graphs, " + std::to_string(runs) +
                             " runs, " + std::to_string(failures) + " counterexamples"};
}

// 2. Pivot killer on all zeros.
Verdict pivot_killer_counts() {
  Verdict v;
  for (std::size_t n : {3, 10, 50}) {
    const auto s = estimate(make_config("q-select", "zeros:" + std::to_string(n), "pivot-killer", 20, 2.0, n));
    const double expect = binom2(n);
    const bool ok = s.query_mean == expect && s.query_max == expect && s.query_p50 == expect;
    v.pass &= ok;
    v.detail += "n=" + std::to_string(n) + ": " + fmt("%.0f", s.query_max) + "/" + fmt("%.0f", expect) + " ";
  }
  return v;
}

// 3. Quick-select below 2n queries against non-adaptive graphs.
Verdict quickselect_linear() {
  Verdict v;
  double worst = 0.0;
  for (const char* adv : {"smaller-wins", "random"}) {
    for (const char* inst : {"uniform01", "zeros"}) {
      for (std::size_t n : {100, 500, 1000}) {
        const auto s = estimate(make_config("q-select", std::string(inst) + ":" + std::to_string(n), adv,
                                            100000, 2.0, 300 + n));
        const double upper = s.query_mean + 3.0 * s.query_stderr();
        worst = std::max(worst, upper / (2.0 * static_cast<double>(n)));
        v.pass &= upper < 2.0 * static_cast<double>(n) && s.errors == 0;
      }
    }
  }
  v.detail = "max (mean + 3 SE) / 2n = " + fmt("%.4f", worst);
  return v;
}

// 4. Tail of quick-select query counts at n = 100.
Verdict quickselect_tail() {
  Verdict v;
  const std::vector<double> ks{6.0, 8.0, 10.0};
  const std::vector<std::pair<std::string, std::string>> setups{{"zeros:100", "smaller-wins"},
                                                                 {"uniform01:100", "random"}};
  std::uint64_t seed = 400;
  for (const auto& [gen, adv] : setups) {
    const auto rows = check_concentration(100, ks, 1000000, adversary_from_string(adv), ++seed,
                                          InstanceSource{std::nullopt, gen});
    for (const auto& r : rows) {
      v.pass &= r.pass;
      v.detail += "k=" + fmt("%.0f", r.k) + " " + fmt("%.2e", r.empirical) + "<=" +
                  fmt("%.2e", r.bound + r.slack) + " ";
    }
  }
  return v;
}

// 5. Modified knock-out: 3-approximation error < eps within the query bound.
Verdict knockout_theorem() {
  Verdict v;
  const std::vector<std::pair<std::string, std::string>> setups{
      {"uniform01:1024", "smaller-wins"}, {"komodhard:1025", "smaller-wins"}, {"komodhard:1025", ""}};
  std::uint64_t seed = 500;
  for (const auto& [gen, adv] : setups) {
    const auto s = estimate(make_config("ko-mod", gen, adv, 1000, 3.0, ++seed));
    const double bound = modified_knockout_query_bound(s.n, 0.1);
    v.pass &= s.error_ci95.hi < 0.1 && s.query_max < bound;
    v.detail += gen + "/" + (adv.empty() ? "construction" : adv) + ": ci_hi " +
                fmt("%.4f", s.error_ci95.hi) + ", q_max " + fmt("%.0f", s.query_max) + " < " +
                fmt("%.0f", bound) + "; ";
  }
  return v;
}

// 6. Modified knock-out fails below t = 3 on the hard instance.
Verdict knockout_lower() {
  const auto s = estimate(make_config("ko-mod", "komodhard:3002", "", 1000, 2.9, 600));
  return {s.error_rate > 0.02, "error rate at t=2.9: " + fmt("%.4f", s.error_rate) + " (95% CI " +
                                   fmt("%.4f", s.error_ci95.lo) + ".." + fmt("%.4f", s.error_ci95.hi) + ")"};
}

// 7 and 8. Combined algorithm.
struct CombOutcome {
  Verdict theorem;
  Verdict shrink;
};

CombOutcome combined_runs() {
  CombOutcome out;
  std::uint64_t rounds_checked = 0;
  std::uint64_t shrink_failures = 0;
  std::uint64_t seed = 700;
  double worst_spread = 0.0;
  double worst_ci = 0.0;
  for (const char* adv : {"pivot-killer", "smaller-wins"}) {
    for (const char* inst : {"zeros", "uniform01", "lemma2"}) {
      double lo = INFINITY;
      double hi = 0.0;
      for (std::size_t n : {256, 512, 1024, 2048}) {
        // lemma2 needs an odd size
        const std::size_t size = std::string(inst) == "lemma2" ? n - 1 : n;
        auto cfg = make_config("comb", std::string(inst) + ":" + std::to_string(size), adv, 100, 2.0, ++seed);
        cfg.keep_round_sizes = true;
        const auto s = estimate(cfg);
        out.theorem.pass &= s.error_ci95.hi < 0.1;
        worst_ci = std::max(worst_ci, s.error_ci95.hi);
        const double ratio = s.query_mean / static_cast<double>(s.n);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        for (const auto& rounds : s.round_sizes) {
          for (std::size_t r = 0; r + 1 < rounds.size(); ++r) {
            ++rounds_checked;
            const auto cap = static_cast<std::size_t>(std::ceil(2.0 * static_cast<double>(rounds[r]) / 3.0));
            shrink_failures += rounds[r + 1] > cap;
          }
        }
      }
      out.theorem.pass &= hi <= 2.0 * lo;
      worst_spread = std::max(worst_spread, hi / lo);
      out.theorem.detail += std::string(inst) + "/" + adv + " q/n " + fmt("%.1f", lo) + ".." + fmt("%.1f", hi) + "; ";
    }
  }
  out.theorem.detail = "max ci_hi " + fmt("%.4f", worst_ci) + ", max spread " + fmt("%.3f", worst_spread) +
                       "; " + out.theorem.detail;
  out.shrink = {shrink_failures == 0 && rounds_checked > 0,
                std::to_string(rounds_checked) + " round transitions, " + std::to_string(shrink_failures) +
                    " violations"};
  return out;
}

// 9. Quick-sort expectation.
Verdict quicksort_expectation() {
  Verdict v;
  for (std::size_t n : {10, 50}) {
    const double f = exact_expected_queries(n);
    const auto noiseless = estimate(make_config("q-sort", "distinct:" + std::to_string(n), "", 100000, 0.0, 900 + n));
    const double se = noiseless.query_stderr();
    v.pass &= std::fabs(noiseless.query_mean - f) <= 3.0 * se && noiseless.errors == 0;
    auto worst_cfg = make_config("q-sort", "uniform01:" + std::to_string(n), "smaller-wins", 100000, 2.0, 950 + n);
    worst_cfg.resample_instance = true;
    const auto worst = estimate(worst_cfg);
    v.pass &= worst.query_mean <= f + 3.0 * worst.query_stderr();
    v.detail += "n=" + std::to_string(n) + " f=" + fmt("%.3f", f) + " noiseless " + fmt("%.3f", noiseless.query_mean) +
                " (3SE " + fmt("%.3f", 3.0 * se) + "), {0,1} " + fmt("%.3f", worst.query_mean) + "; ";
  }
  return v;
}

double seconds_of(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Fixed batch of planted suites with their samples for one n.
struct TimingBatch {
  std::vector<CandidateSuite> suites;
  std::vector<SampleSet> samples;
};

TimingBatch timing_batch(std::size_t n) {
  Rng gen(RngSeed{1010, n});
  TimingBatch b;
  for (int k = 0; k < 8; ++k) {
    b.suites.push_back(planted_suite(20, n, 0.1, gen));
    b.samples.push_back(sample(b.suites.back().p0, 10000, RngSeed{gen.next(), 0}));
  }
  return b;
}

double batch_time(const TimingBatch& b, bool tournament, std::uint64_t round) {
  Rng rng(RngSeed{round, 7});
  return seconds_of([&] {
    for (int rep = 0; rep < 10; ++rep) {
      for (std::size_t k = 0; k < b.suites.size(); ++k) {
        if (tournament) {
          (void)scheffe_tournament(b.suites[k].candidates, b.samples[k], rng);
        } else {
          // quick-select cost is random; average it over several draws
          for (int d = 0; d < 16; ++d) (void)scheffe_quickselect(b.suites[k].candidates, b.samples[k], rng);
        }
      }
    }
  });
}

// Median over rounds of time(2n) / time(n); the two sizes alternate so both
// see the same machine load.
double growth(const TimingBatch& small, const TimingBatch& large, bool tournament) {
  std::vector<double> ratios;
  for (std::uint64_t r = 0; r < 7; ++r) {
    const double a = batch_time(small, tournament, r);
    const double b = batch_time(large, tournament, r);
    ratios.push_back(b / a);
  }
  std::sort(ratios.begin(), ratios.end());
  return ratios[ratios.size() / 2];
}

// 10. Scheffe selection on planted suites.
Verdict scheffe_factor_nine() {
  const std::size_t n = 50;
  const std::size_t k = 10000;
  const int trials = 200;
  Rng gen(RngSeed{1000, 0});
  int violations = 0;
  double tests = 0.0;
  bool tournament_exact = true;
  for (int trial = 0; trial < trials; ++trial) {
    const auto suite = planted_suite(20, n, 0.1, gen);
    const auto samples = sample(suite.p0, k, RngSeed{gen.next(), 0});
    Rng rng(RngSeed{gen.next(), 1});
    const auto q = scheffe_quickselect(suite.candidates, samples, rng);
    double min_l1 = INFINITY;
    for (const auto& c : suite.candidates) min_l1 = std::min(min_l1, l1_distance(c, suite.p0));
    violations += l1_distance(suite.candidates[q.chosen], suite.p0) > scheffe_factor9_bound(min_l1, n, k, 0.05);
    tests += static_cast<double>(q.tests);
    if (trial < 20) tournament_exact &= scheffe_tournament(suite.candidates, samples, rng).tests == binom2(n);
  }
  const double rate = static_cast<double>(violations) / trials;
  const double mean_tests = tests / trials;

  const auto small = timing_batch(25);
  const auto large = timing_batch(50);
  const double tour_growth = growth(small, large, true);
  const double qs_growth = growth(small, large, false);
  const bool pass = rate < 0.05 && mean_tests < 2.0 * n && tournament_exact && tour_growth >= 4.0 &&
                    qs_growth >= 1.5 && qs_growth <= 2.7;
  return {pass, "violations " + fmt("%.3f", rate) + ", mean tests " + fmt("%.1f", mean_tests) +
                    ", tournament tests exact " + (tournament_exact ? "yes" : "no") + ", time growth n 25->50: tournament " +
                    fmt("%.2f", tour_growth) + "x, quick-select " + fmt("%.2f", qs_growth) + "x"};
}

// 11. Regular-tournament construction.
Verdict regular_construction() {
  Verdict v;
  for (std::size_t n = 3; n <= 15; n += 2) {
    const auto c = lemma_one_construction(n, RngSeed{1100, n});
    v.pass &= c.graph.is_valid_for(c.instance);
    for (std::size_t d : c.graph.out_degrees()) v.pass &= d == (n - 1) / 2;
  }
  v.detail = "degrees and validity checked for n=3..15; measured t=0.5 error at n=15:";
  for (const char* algo : {"compl", "seq", "q-select", "ko-mod", "comb"}) {
    const auto s = estimate(make_config(algo, "lemma1:15", "", 4000, 0.5, 1150));
    v.detail += std::string(" ") + algo + "=" + fmt("%.3f", s.error_rate);
  }
  v.detail += " (1-1/n = " + fmt("%.3f", 1.0 - 1.0 / 15.0) + ")";
  return v;
}

// 12. The report is byte-identical across runs with one seed.
Verdict report_reproducible() {
  const auto a = bound_report(12);
  const auto b = bound_report(12);
  std::size_t failing = 0;
  for (const auto& r : a.rows) failing += r.verdict == "FAIL";
  return {a.csv == b.csv && !a.csv.empty(),
          std::to_string(a.rows.size()) + " rows, identical " + (a.csv == b.csv ? "yes" : "no") + ", rows marked FAIL: " +
              std::to_string(failing)};
}

}  // namespace
}  // namespace advsel

int main() {
  using namespace advsel;
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Verdict()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !v.pass;
    std::printf("[%s] criterion %2d %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs);
    std::fflush(stdout);
  };
  report(1, "exhaustive zero-error 2-approximation", exhaustive_two_approximation);
  report(2, "pivot killer forces C(n,2)", pivot_killer_counts);
  report(3, "quick-select mean queries < 2n", quickselect_linear);
  report(4, "quick-select query tail", quickselect_tail);
  report(5, "modified knock-out guarantee", knockout_theorem);
  report(6, "modified knock-out fails below t=3", knockout_lower);
  CombOutcome comb;
  report(7, "combined algorithm guarantee and linear queries", [&] {
    comb = combined_runs();
    return comb.theorem;
  });
  report(8, "combined round shrink", [&] { return comb.shrink; });
  report(9, "quick-sort expected queries", quicksort_expectation);
  report(10, "Scheffe quick-select factor 9", scheffe_factor_nine);
  report(11, "regular tournament construction", regular_construction);
  report(12, "report reproducibility", report_reproducible);
  std::printf("%d of 12 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
