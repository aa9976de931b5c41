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

// Monte-Carlo trial engine. Trial i draws its randomness from the sub-stream
// (seed, i), and all statistics are reduced in trial order, so a summary does
// not depend on the number of worker threads.

#ifndef ADVSEL_HARNESS_HPP_
#define ADVSEL_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "advsel/rng.hpp"
#include "advsel/scenario.hpp"

namespace advsel {

// Any selection id ("compl", "seq", "ko-mod", "q-select", "comb") or sort id
// ("compl-sort", "q-sort"). Sorts count a trial as an error when the output
// order is not t-sorted.
struct TrialConfig {
  std::string algorithm;
  std::optional<InstanceSource> instance;
  std::optional<AdversarySpec> adversary;
  double t = 2.0;
  double epsilon = 0.1;
  std::uint64_t trials = 1000;
  RngSeed seed;
  bool resample_instance = false;  // rebuild instance and graph every trial
  bool keep_queries = false;
  bool keep_round_sizes = false;
  unsigned threads = 0;  // 0: ADVSEL_THREADS, else hardware concurrency
};

TrialConfig trial_config_from_json(const Json& j);
Json trial_config_to_json(const TrialConfig& config);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct TrialSummary {
  std::string algorithm;
  std::string adversary;
  std::size_t n = 0;
  double t = 0.0;
  double epsilon = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  std::uint64_t model_violations = 0;
  double error_rate = 0.0;
  Interval error_ci95;
  double query_mean = 0.0;
  double query_stddev = 0.0;  // sample standard deviation
  double query_max = 0.0;
  double query_p50 = 0.0;
  double query_p90 = 0.0;
  double query_p99 = 0.0;
  double wall_time = 0.0;  // seconds; never written to CSV
  std::vector<std::uint64_t> queries;                  // when keep_queries
  std::vector<std::vector<std::size_t>> round_sizes;  // when keep_round_sizes

  double query_stderr() const;
};

TrialSummary estimate(const TrialConfig& config);

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);
// Nearest-rank quantile of an ascending sequence.
double nearest_rank(const std::vector<std::uint64_t>& sorted, double q);
unsigned worker_count(unsigned requested);

struct ConcentrationRow {
  double k = 0.0;
  double k_prime = 0.0;
  double empirical = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // 3 binomial standard errors at p = min(bound, 1)
  bool pass = true;
};

// e^{-(k - k') ln k'}, k' = max(e, k / 2).
double concentration_bound(double k);

// Tail of quick-select query counts against a non-adaptive adversary. The
// instance defaults to uniform01:n.
std::vector<ConcentrationRow> check_concentration(std::size_t n, const std::vector<double>& k_values,
                                                  std::uint64_t trials, const AdversarySpec& adversary,
                                                  std::uint64_t seed,
                                                  std::optional<InstanceSource> instance = {});

inline constexpr const char* kCsvHeader =
    "algorithm,adversary,n,t,epsilon,trials,error_rate,ci_lo,ci_hi,q_mean,q_p50,q_p90,q_p99,q_max,"
    "pass";

std::string csv_row(const TrialSummary& s, const std::string& pass);

struct ReportOptions {
  std::size_t max_n = 2048;
  double scale = 1.0;  // multiplies every row's trial count
};

struct ReportRow {
  TrialSummary summary;
  std::string instance;
  std::string guarantee;
  std::string bound;  // claimed query bound, rendered
  std::string verdict;  // "PASS", "FAIL" or "INFO"
};

struct Report {
  std::vector<ReportRow> rows;
  std::string csv;
  std::string text;
  bool all_pass() const;
};

Report bound_report(std::uint64_t seed, const ReportOptions& options = {});

}  // namespace advsel

#endif  // ADVSEL_HARNESS_HPP_
