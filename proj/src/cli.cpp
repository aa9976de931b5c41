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

#include "advsel/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "advsel/algorithms.hpp"
#include "advsel/harness.hpp"
#include "advsel/scenario.hpp"
#include "advsel/scheffe.hpp"
#include "advsel/sorting.hpp"

namespace advsel {

namespace {

// Raised when a session saw the adversary contradict a forced outcome.
struct ViolationExit {
  std::string what;
};

struct InstanceFlags {
  std::string file;
  std::string gen;
  std::string algo;
  std::string adversary;
  double epsilon = 0.1;
  std::optional<std::uint64_t> seed;
  bool json = false;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& f) {
  auto* file = cmd->add_option("--file", f.file, "instance JSON file");
  auto* gen = cmd->add_option("--gen", f.gen, "generator, e.g. zeros:10, lemma2:7, seqhard:2,3");
  file->excludes(gen);
  cmd->add_option("--algo", f.algo, "algorithm id")->required();
  cmd->add_option("--adversary", f.adversary,
                  "policy name, pivot-killer, inline JSON or adversary JSON file");
  cmd->add_option("--seed", f.seed, "master seed (drawn from entropy if omitted)");
  cmd->add_flag("--json", f.json, "emit one JSON record");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

Scenario scenario_from_flags(const InstanceFlags& f, std::uint64_t seed) {
  std::optional<InstanceSource> source;
  if (!f.file.empty()) source = InstanceSource{load_instance_file(f.file), std::nullopt};
  if (!f.gen.empty()) source = InstanceSource{std::nullopt, f.gen};
  std::optional<AdversarySpec> adversary;
  if (!f.adversary.empty()) adversary = adversary_from_string(f.adversary);
  if (!source && !adversary) throw InputError("give --file or --gen");
  return build_scenario(source, adversary, RngSeed{seed, kScenarioStream});
}

void emit(std::ostream& out, const Json& record, bool json) {
  if (json) {
    out << record.dump() << '\n';
    return;
  }
  for (const auto& [key, value] : record.items()) {
    out << key << ": ";
    if (value.is_string()) {
      out << value.get<std::string>();
    } else if (value.is_array()) {
      bool first = true;
      for (const auto& v : value) {
        out << (first ? "" : " ") << v.dump();
        first = false;
      }
    } else {
      out << value.dump();
    }
    out << '\n';
  }
}

int run_select(const InstanceFlags& f, std::ostream& out) {
  const auto algo = parse_algorithm(f.algo);
  if (!algo) throw InputError("unknown selection algorithm '" + f.algo + "'");
  const std::uint64_t seed = resolve_seed(f.seed);
  const Scenario sc = scenario_from_flags(f, seed);
  auto adversary = sc.make_adversary();
  ComparatorSession session(*sc.instance, *adversary);
  Rng rng(RngSeed{seed, 0});
  const auto items = all_indices(sc.instance->size());
  const auto r = run_selection(*algo, session, items, f.epsilon, rng);
  if (session.violation_detected()) throw ViolationExit{"adversary contradicted a forced comparison"};
  const double value = sc.instance->value(r.winner);
  Json rec{{"command", "select"},
           {"seed", seed},
           {"algorithm", f.algo},
           {"adversary", sc.label},
           {"n", sc.instance->size()},
           {"winner", r.winner},
           {"winner_value", value},
           {"x_star", sc.instance->max_value()},
           {"gap", sc.instance->max_value() - value},
           {"queries", r.queries}};
  emit(out, rec, f.json);
  return kExitOk;
}

int run_sort_cmd(const InstanceFlags& f, std::ostream& out) {
  const auto algo = parse_sort_algorithm(f.algo);
  if (!algo) throw InputError("unknown sort algorithm '" + f.algo + "'");
  const std::uint64_t seed = resolve_seed(f.seed);
  const Scenario sc = scenario_from_flags(f, seed);
  auto adversary = sc.make_adversary();
  ComparatorSession session(*sc.instance, *adversary);
  Rng rng(RngSeed{seed, 0});
  const auto items = all_indices(sc.instance->size());
  const auto r = run_sort(*algo, session, items, rng);
  if (session.violation_detected()) throw ViolationExit{"adversary contradicted a forced comparison"};
  // Smallest t for which the output is t-sorted.
  const auto values = values_in_order(*sc.instance, r.order);
  double worst = 0.0;
  double prefix_min = values.front();
  for (double v : values) {
    worst = std::max(worst, v - prefix_min);
    prefix_min = std::min(prefix_min, v);
  }
  Json rec{{"command", "sort"},   {"seed", seed},          {"algorithm", f.algo},
           {"adversary", sc.label}, {"n", sc.instance->size()}, {"order", r.order},
           {"max_inversion", worst}, {"queries", r.queries}};
  emit(out, rec, f.json);
  return kExitOk;
}

int run_bench(const std::string& config_path, std::uint64_t seed, const std::string& out_path,
              unsigned threads, std::ostream& out) {
  const Json j = load_json_file(config_path);
  std::vector<Json> configs;
  if (j.is_array()) {
    configs.assign(j.begin(), j.end());
  } else {
    configs.push_back(j);
  }
  std::string csv = std::string(kCsvHeader) + "\n";
  std::uint64_t violations = 0;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    TrialConfig cfg = trial_config_from_json(configs[c]);
    cfg.seed = RngSeed{seed, c};
    if (threads > 0) cfg.threads = threads;
    const TrialSummary s = estimate(cfg);
    violations += s.model_violations;
    csv += csv_row(s, "-") + "\n";
  }
  if (out_path.empty()) {
    out << csv;
  } else {
    std::ofstream f(out_path);
    if (!f) throw InputError("cannot write '" + out_path + "'");
    f << csv;
  }
  if (violations > 0) throw ViolationExit{std::to_string(violations) + " trials saw model violations"};
  return kExitOk;
}

int run_scheffe(const std::string& path, std::size_t k, const std::string& method,
                std::optional<std::uint64_t> seed_flag, bool json, std::ostream& out) {
  if (method != "tournament" && method != "quickselect") {
    throw InputError("--method must be tournament or quickselect");
  }
  if (k == 0) throw InputError("--k must be >= 1");
  const Json j = load_json_file(path);
  std::vector<DiscreteDistribution> cands;
  std::optional<DiscreteDistribution> p0;
  try {
    const auto support = j.at("support").get<std::size_t>();
    auto check = [&](std::vector<double> probs) {
      if (probs.size() != support) throw InputError("distribution does not match the declared support");
      return DiscreteDistribution(std::move(probs));
    };
    for (const auto& c : j.at("candidates")) cands.push_back(check(c.get<std::vector<double>>()));
    p0 = check(j.at("p0").get<std::vector<double>>());
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed candidate file: ") + e.what());
  } catch (const PreconditionError& e) {
    throw InputError(std::string("invalid distribution: ") + e.what());
  }
  if (cands.empty()) throw InputError("candidate list is empty");

  const std::uint64_t seed = resolve_seed(seed_flag);
  const SampleSet samples = sample(*p0, k, RngSeed{seed, 1});
  Rng rng(RngSeed{seed, 0});
  const ScheffeSelection sel = method == "tournament" ? scheffe_tournament(cands, samples, rng)
                                                      : scheffe_quickselect(cands, samples, rng);
  double min_l1 = INFINITY;
  for (const auto& c : cands) min_l1 = std::min(min_l1, l1_distance(c, *p0));
  const double chosen_l1 = l1_distance(cands[sel.chosen], *p0);
  Json ratio = nullptr;  // undefined when some candidate equals p0
  if (min_l1 > 0.0) ratio = chosen_l1 / min_l1;
  Json rec{{"command", "scheffe"},
           {"seed", seed},
           {"method", method},
           {"k", k},
           {"n", cands.size()},
           {"chosen", sel.chosen},
           {"l1_to_p0", chosen_l1},
           {"min_l1", min_l1},
           {"ratio", ratio},
           {"tests", sel.tests}};
  emit(out, rec, json);
  return kExitOk;
}

int run_report(std::uint64_t seed, const std::string& dir, std::ostream& out) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create '" + dir + "': " + ec.message());
  const Report r = bound_report(seed);
  const auto base = std::filesystem::path(dir);
  std::ofstream csv(base / "report.csv");
  std::ofstream txt(base / "report.txt");
  if (!csv || !txt) throw InputError("cannot write report files under '" + dir + "'");
  csv << r.csv;
  txt << r.text;
  out << r.text;
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selection and sorting under threshold-adversarial comparators"};
  app.name("advsel");
  app.require_subcommand(1, 1);

  InstanceFlags select_flags;
  auto* select = app.add_subcommand("select", "select a maximum");
  add_instance_flags(select, select_flags);
  select->add_option("--epsilon", select_flags.epsilon, "error target for ko-mod and comb");

  InstanceFlags sort_flags;
  auto* sort = app.add_subcommand("sort", "sort in decreasing order");
  add_instance_flags(sort, sort_flags);

  std::string bench_config;
  std::uint64_t bench_seed = 0;
  std::string bench_out;
  unsigned bench_threads = 0;
  auto* bench = app.add_subcommand("bench", "run Monte-Carlo trials from a TrialConfig JSON");
  bench->add_option("--config", bench_config, "TrialConfig JSON file (object or array)")->required();
  bench->add_option("--seed", bench_seed, "master seed")->required();
  bench->add_option("--out", bench_out, "CSV output path (stdout if omitted)");
  bench->add_option("--threads", bench_threads, "worker threads");

  std::string sch_file;
  std::size_t sch_k = 0;
  std::string sch_method = "quickselect";
  std::optional<std::uint64_t> sch_seed;
  bool sch_json = false;
  auto* scheffe = app.add_subcommand("scheffe", "select a density among candidates");
  scheffe->add_option("--file", sch_file, "candidate JSON file")->required();
  scheffe->add_option("--k", sch_k, "number of samples from p0")->required();
  scheffe->add_option("--method", sch_method, "tournament or quickselect");
  scheffe->add_option("--seed", sch_seed, "master seed (drawn from entropy if omitted)");
  scheffe->add_flag("--json", sch_json, "emit one JSON record");

  std::uint64_t report_seed = 0;
  std::string report_out;
  auto* report = app.add_subcommand("report", "reproduce the bound table");
  report->add_option("--seed", report_seed, "master seed")->required();
  report->add_option("--out", report_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (*select) return run_select(select_flags, out);
    if (*sort) return run_sort_cmd(sort_flags, out);
    if (*bench) return run_bench(bench_config, bench_seed, bench_out, bench_threads, out);
    if (*scheffe) return run_scheffe(sch_file, sch_k, sch_method, sch_seed, sch_json, out);
    if (*report) return run_report(report_seed, report_out, out);
  } catch (const ViolationExit& v) {
    err << "model violation: " << v.what << '\n';
    return kExitModelViolation;
  } catch (const ModelViolation& e) {
    err << "model violation: " << e.what() << '\n';
    return kExitModelViolation;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace advsel
