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

#include "advsel/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>
#include <variant>

#include "advsel/algorithms.hpp"
#include "advsel/sorting.hpp"

namespace advsel {

namespace {

using AnyAlgorithm = std::variant<Algorithm, SortAlgorithm>;

AnyAlgorithm resolve_algorithm(const std::string& id) {
  if (auto a = parse_algorithm(id)) return *a;
  if (auto s = parse_sort_algorithm(id)) return *s;
  throw InputError("unknown algorithm '" + id + "'");
}

struct TrialResult {
  bool error = false;
  bool violation = false;
  std::uint64_t queries = 0;
  std::vector<std::size_t> round_sizes;
};

TrialResult run_trial(const Scenario& sc, const AnyAlgorithm& algo, const TrialConfig& cfg,
                      Rng& rng) {
  auto adversary = sc.make_adversary();
  ComparatorSession session(*sc.instance, *adversary);
  session.log().set_retain(false);
  const auto items = all_indices(sc.instance->size());
  TrialResult out;
  if (const auto* a = std::get_if<Algorithm>(&algo)) {
    auto r = run_selection(*a, session, items, cfg.epsilon, rng);
    out.error = !is_t_approx(sc.instance->value(r.winner), *sc.instance, cfg.t);
    out.queries = r.queries;
    if (cfg.keep_round_sizes) out.round_sizes = std::move(r.round_sizes);
  } else {
    auto r = run_sort(std::get<SortAlgorithm>(algo), session, items, rng);
    out.error = !is_t_sorted(values_in_order(*sc.instance, r.order), cfg.t);
    out.queries = r.queries;
  }
  out.violation = session.violation_detected();
  return out;
}

RngSeed trial_seed(RngSeed base, std::uint64_t trial) {
  return RngSeed{base.seed ^ splitmix64(base.stream), trial};
}

RngSeed scenario_seed(RngSeed base, std::uint64_t trial, bool per_trial) {
  return RngSeed{base.seed ^ splitmix64(base.stream),
                 per_trial ? splitmix64(kScenarioStream ^ trial) : kScenarioStream};
}

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

double TrialSummary::query_stderr() const {
  return trials == 0 ? 0.0 : query_stddev / std::sqrt(static_cast<double>(trials));
}

TrialConfig trial_config_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw InputError("trial config must be a JSON object");
    TrialConfig c;
    c.algorithm = j.at("algorithm").get<std::string>();
    if (j.contains("instance")) c.instance = instance_source_from_json(j.at("instance"));
    if (j.contains("adversary")) {
      const auto& a = j.at("adversary");
      c.adversary = a.is_string() ? adversary_from_string(a.get<std::string>()) : adversary_from_json(a);
    }
    c.t = j.value("t", c.t);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.trials = j.value("trials", c.trials);
    c.seed.seed = j.value("seed", std::uint64_t{0});
    c.seed.stream = j.value("stream", std::uint64_t{0});
    c.resample_instance = j.value("resample_instance", false);
    c.threads = j.value("threads", 0u);
    if (c.trials < 1) throw InputError("trials must be >= 1");
    if (!(c.t >= 0.0)) throw InputError("t must be >= 0");
    return c;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed trial config: ") + e.what());
  }
}

Json trial_config_to_json(const TrialConfig& c) {
  Json j{{"algorithm", c.algorithm}, {"t", c.t},         {"epsilon", c.epsilon},
         {"trials", c.trials},       {"seed", c.seed.seed}, {"stream", c.seed.stream}};
  if (c.instance) j["instance"] = instance_source_to_json(*c.instance);
  if (c.adversary) j["adversary"] = adversary_to_json(*c.adversary);
  if (c.resample_instance) j["resample_instance"] = true;
  return j;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // Clamp so the interval always contains p despite rounding at the ends.
  return {std::min(p, std::max(0.0, center - half)), std::max(p, std::min(1.0, center + half))};
}

double nearest_rank(const std::vector<std::uint64_t>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return static_cast<double>(sorted[rank - 1]);
}

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ADVSEL_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

TrialSummary estimate(const TrialConfig& config) {
  if (config.trials < 1) throw PreconditionError("trials must be >= 1");
  if (!(config.t >= 0.0)) throw PreconditionError("t must be >= 0");
  const AnyAlgorithm algo = resolve_algorithm(config.algorithm);
  if (std::holds_alternative<Algorithm>(algo)) {
    const auto a = std::get<Algorithm>(algo);
    if ((a == Algorithm::kModifiedKnockout || a == Algorithm::kCombined) &&
        !(config.epsilon > 0.0 && config.epsilon < 1.0)) {
      throw InputError("epsilon must lie in (0, 1)");
    }
  }

  const auto start = std::chrono::steady_clock::now();
  std::optional<Scenario> shared;
  if (!config.resample_instance) {
    shared = build_scenario(config.instance, config.adversary,
                            scenario_seed(config.seed, 0, false));
  }

  const std::uint64_t trials = config.trials;
  std::vector<std::uint64_t> queries(trials);
  std::vector<std::uint8_t> error(trials);
  std::vector<std::uint8_t> violation(trials);
  std::vector<std::vector<std::size_t>> rounds(config.keep_round_sizes ? trials : 0);
  std::size_t n = shared ? shared->instance->size() : 0;
  std::string label = shared ? shared->label : "";
  std::mutex label_mu;

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= trials) return;
        std::optional<Scenario> own;
        if (!shared) {
          own = build_scenario(config.instance, config.adversary,
                               scenario_seed(config.seed, i, true));
          if (i == 0) {
            std::lock_guard lock(label_mu);
            n = own->instance->size();
            label = own->label;
          }
        }
        const Scenario& sc = shared ? *shared : *own;
        Rng rng(trial_seed(config.seed, i));
        TrialResult r = run_trial(sc, algo, config, rng);
        queries[i] = r.queries;
        error[i] = r.error;
        violation[i] = r.violation;
        if (config.keep_round_sizes) rounds[i] = std::move(r.round_sizes);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(trials);
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(worker_count(config.threads), trials));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  TrialSummary s;
  s.algorithm = config.algorithm;
  s.adversary = label;
  s.n = n;
  s.t = config.t;
  s.epsilon = config.epsilon;
  s.trials = trials;
  double sum = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    s.errors += error[i];
    s.model_violations += violation[i];
    sum += static_cast<double>(queries[i]);
  }
  s.error_rate = static_cast<double>(s.errors) / static_cast<double>(trials);
  s.error_ci95 = wilson_interval(s.errors, trials);
  s.query_mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (std::uint64_t q : queries) {
    const double d = static_cast<double>(q) - s.query_mean;
    ss += d * d;
  }
  s.query_stddev = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;

  std::vector<std::uint64_t> sorted = queries;
  std::sort(sorted.begin(), sorted.end());
  s.query_max = static_cast<double>(sorted.back());
  s.query_p50 = nearest_rank(sorted, 0.5);
  s.query_p90 = nearest_rank(sorted, 0.9);
  s.query_p99 = nearest_rank(sorted, 0.99);
  if (config.keep_queries) s.queries = std::move(queries);
  if (config.keep_round_sizes) s.round_sizes = std::move(rounds);
  s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

double concentration_bound(double k) {
  const double kp = std::max(std::numbers::e, k / 2.0);
  return std::exp(-(k - kp) * std::log(kp));
}

std::vector<ConcentrationRow> check_concentration(std::size_t n, const std::vector<double>& k_values,
                                                  std::uint64_t trials, const AdversarySpec& adversary,
                                                  std::uint64_t seed,
                                                  std::optional<InstanceSource> instance) {
  const bool adaptive = adversary.kind == AdversarySpec::Kind::kConstruction &&
                        adversary.name == "pivot-killer";
  if (adaptive) throw PreconditionError("the concentration bound holds for non-adaptive adversaries only");
  TrialConfig cfg;
  cfg.algorithm = "q-select";
  cfg.instance = instance ? std::move(instance)
                          : std::optional<InstanceSource>(
                                InstanceSource{std::nullopt, "uniform01:" + std::to_string(n)});
  cfg.adversary = adversary;
  cfg.trials = trials;
  cfg.seed = RngSeed{seed, 0};
  cfg.keep_queries = true;
  const TrialSummary s = estimate(cfg);

  std::vector<ConcentrationRow> rows;
  const double nn = static_cast<double>(s.n);
  for (double k : k_values) {
    ConcentrationRow row;
    row.k = k;
    row.k_prime = std::max(std::numbers::e, k / 2.0);
    row.bound = concentration_bound(k);
    std::uint64_t over = 0;
    for (std::uint64_t q : s.queries) over += static_cast<double>(q) > k * nn;
    row.empirical = static_cast<double>(over) / static_cast<double>(trials);
    const double p = std::min(row.bound, 1.0);
    row.slack = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    row.pass = row.empirical <= row.bound + row.slack;
    rows.push_back(row);
  }
  return rows;
}

std::string csv_row(const TrialSummary& s, const std::string& pass) {
  std::ostringstream os;
  os << s.algorithm << ',' << s.adversary << ',' << s.n << ',' << fixed(s.t) << ','
     << fixed(s.epsilon) << ',' << s.trials << ',' << fixed(s.error_rate) << ','
     << fixed(s.error_ci95.lo) << ',' << fixed(s.error_ci95.hi) << ',' << fixed(s.query_mean, 3)
     << ',' << fixed(s.query_p50, 0) << ',' << fixed(s.query_p90, 0) << ','
     << fixed(s.query_p99, 0) << ',' << fixed(s.query_max, 0) << ',' << pass;
  return os.str();
}

bool Report::all_pass() const {
  return std::none_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.verdict == "FAIL"; });
}

namespace {

struct RowPlan {
  std::string algorithm;
  std::string generator;
  std::string adversary;
  double t = 2.0;
  double epsilon = 0.1;
  std::uint64_t trials = 100;
  std::string guarantee;
};

std::size_t generator_size(const std::string& gen) {
  const auto g = parse_generator(gen);
  if (g.name == "seqhard") {
    std::size_t n = 1;
    for (std::size_t k = 0; k < g.args[1]; ++k) n *= g.args[0];
    return n;
  }
  return g.args.front();
}

}  // namespace

Report bound_report(std::uint64_t seed, const ReportOptions& options) {
  Report report;
  std::uint64_t row_index = 0;
  auto run = [&](const RowPlan& plan) -> std::optional<TrialSummary> {
    if (generator_size(plan.generator) > options.max_n) return std::nullopt;
    TrialConfig cfg;
    cfg.algorithm = plan.algorithm;
    cfg.instance = InstanceSource{std::nullopt, plan.generator};
    if (!plan.adversary.empty()) cfg.adversary = adversary_from_string(plan.adversary);
    cfg.t = plan.t;
    cfg.epsilon = plan.epsilon;
    cfg.trials = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(static_cast<double>(plan.trials) * options.scale)));
    // Each row gets its own stream so adding rows never shifts the others.
    cfg.seed = RngSeed{seed, ++row_index};
    return estimate(cfg);
  };
  auto add = [&](const RowPlan& plan, const TrialSummary& s, std::string bound, std::string verdict) {
    report.rows.push_back(ReportRow{s, plan.generator, plan.guarantee, std::move(bound), std::move(verdict)});
  };
  auto binom = [](std::size_t n) { return static_cast<double>(n) * static_cast<double>(n - 1) / 2.0; };
  auto verdict = [](bool ok) { return std::string(ok ? "PASS" : "FAIL"); };

  // Complete tournament: zero error at t = 2, exactly C(n,2) queries.
  {
    RowPlan p{"compl", "uniform01:256", "smaller-wins", 2.0, 0.1, 100, "2-approx, error 0"};
    if (auto s = run(p)) {
      const double b = binom(s->n);
      add(p, *s, "= " + fixed(b, 0), verdict(s->errors == 0 && s->query_max == b && s->query_mean == b));
    }
    RowPlan q{"compl", "lemma1:15", "", 0.5, 0.1, 2000, "t<1 error ~ 1-1/n"};
    if (auto s = run(q)) add(q, *s, "= " + fixed(binom(s->n), 0), "INFO");
  }
  // Sequential selection on the level table: output far below the maximum.
  for (std::size_t r : {2, 3}) {
    for (std::size_t sl : {2, 3}) {
      RowPlan p{"seq", "seqhard:" + std::to_string(r) + "," + std::to_string(sl), "", 1.0, 0.1, 2000,
                "no constant-factor guarantee"};
      if (auto s = run(p)) add(p, *s, "= " + std::to_string(s->n - 1), "INFO");
    }
  }
  // Modified knock-out: 3-approx with error < eps within the query bound.
  for (const char* gen : {"uniform01:1024", "komodhard:1025"}) {
    RowPlan p{"ko-mod", gen, "smaller-wins", 3.0, 0.1, 100, "3-approx, error < eps"};
    if (gen == std::string("komodhard:1025")) p.adversary = "";
    if (auto s = run(p)) {
      const double b = modified_knockout_query_bound(s->n, p.epsilon);
      add(p, *s, "< " + fixed(b, 0), verdict(s->error_ci95.hi < p.epsilon && s->query_max < b));
    }
  }
  {
    RowPlan p{"ko-mod", "komodhard:2048", "", 2.9, 0.1, 300, "t<3 error bounded away from 0"};
    if (auto s = run(p)) {
      add(p, *s, "< " + fixed(modified_knockout_query_bound(s->n, p.epsilon), 0),
          verdict(s->error_rate > 0.02));
    }
  }
  // Quick-select: zero error at t = 2, fewer than 2n queries non-adaptively,
  // C(n,2) against the adaptive pivot killer.
  for (const char* adv : {"smaller-wins", "random"}) {
    // A transitive graph sits about 2 ln n below 2n, so the 3-SE margin needs ~1e5 trials.
    RowPlan p{"q-select", "uniform01:1000", adv, 2.0, 0.1, 100000, "2-approx, error 0, q < 2n"};
    if (auto s = run(p)) {
      const double b = 2.0 * static_cast<double>(s->n);
      add(p, *s, "< " + fixed(b, 0),
          verdict(s->errors == 0 && s->query_mean + 3.0 * s->query_stderr() < b));
    }
  }
  {
    RowPlan p{"q-select", "zeros:50", "pivot-killer", 2.0, 0.1, 20, "adaptive: C(n,2) queries"};
    if (auto s = run(p)) {
      const double b = binom(s->n);
      add(p, *s, "= " + fixed(b, 0), verdict(s->errors == 0 && s->query_max == b && s->query_mean == b));
    }
  }
  // Combined algorithm: linear query growth, 2-approx with error < eps.
  for (const char* adv : {"pivot-killer", "smaller-wins"}) {
    std::vector<std::size_t> first_rows;
    double lo_ratio = INFINITY;
    double hi_ratio = 0.0;
    for (std::size_t n : {256, 512, 1024, 2048}) {
      RowPlan p{"comb", "zeros:" + std::to_string(n), adv, 2.0, 0.1, 40, "2-approx, error < eps, O(n log 1/eps)"};
      auto s = run(p);
      if (!s) continue;
      const double ratio = s->query_mean / (static_cast<double>(s->n) * std::log2(1.0 / p.epsilon));
      lo_ratio = std::min(lo_ratio, ratio);
      hi_ratio = std::max(hi_ratio, ratio);
      first_rows.push_back(report.rows.size());
      add(p, *s, "q/(n log2(1/eps)) = " + fixed(ratio, 3), verdict(s->error_ci95.hi < p.epsilon));
    }
    if (hi_ratio > 2.0 * lo_ratio) {
      for (std::size_t k : first_rows) report.rows[k].verdict = "FAIL";
    }
  }
  // Sorting: t = 2 sortedness is guaranteed; quick-sort matches the noiseless expectation.
  for (const char* algo : {"compl-sort", "q-sort"}) {
    RowPlan p{algo, "uniform01:256", "smaller-wins", 2.0, 0.1, 100, "2-sorted, error 0"};
    if (auto s = run(p)) add(p, *s, "-", verdict(s->errors == 0));
  }
  {
    RowPlan p{"q-sort", "distinct:50", "", 0.0, 0.1, 4000, "noiseless mean = exact expectation"};
    if (auto s = run(p)) {
      const double f = exact_expected_queries(s->n);
      add(p, *s, "= " + fixed(f, 3),
          verdict(s->errors == 0 && std::fabs(s->query_mean - f) <= 3.0 * s->query_stderr()));
    }
  }

  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  for (const auto& r : report.rows) csv << csv_row(r.summary, r.verdict) << '\n';
  report.csv = csv.str();

  std::ostringstream text;
  char line[512];
  std::snprintf(line, sizeof line, "%-10s %-13s %-15s %5s %4s  %-38s %-23s %-12s %-28s %s\n",
                "algorithm", "adversary", "instance", "n", "t", "guarantee", "error (95% CI)",
                "q mean", "claimed queries", "verdict");
  text << line;
  for (const auto& r : report.rows) {
    const auto& s = r.summary;
    const std::string err = fixed(s.error_rate, 4) + " [" + fixed(s.error_ci95.lo, 3) + "," +
                            fixed(s.error_ci95.hi, 3) + "]";
    std::snprintf(line, sizeof line, "%-10s %-13s %-15s %5zu %4.1f  %-38s %-23s %-12s %-28s %s\n",
                  s.algorithm.c_str(), s.adversary.c_str(), r.instance.c_str(), s.n, s.t,
                  r.guarantee.c_str(), err.c_str(), fixed(s.query_mean, 1).c_str(), r.bound.c_str(),
                  r.verdict.c_str());
    text << line;
  }
  text << (report.all_pass() ? "all checked rows pass\n" : "some rows FAIL\n");
  report.text = text.str();
  return report;
}

}  // namespace advsel
