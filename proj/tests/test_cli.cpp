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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "advsel/cli.hpp"
#include "advsel/scenario.hpp"

namespace advsel {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "advsel");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "advsel_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

TEST_CASE("select with the pivot killer") {
  const auto r = cli({"select", "--gen", "zeros:10", "--algo", "q-select", "--adversary",
                      "pivot-killer", "--seed", "1", "--json"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j.at("queries") == 45);
  CHECK(j.at("seed") == 1);
  CHECK(j.at("x_star") == 0.0);
}

TEST_CASE("json output round-trips") {
  for (auto args : std::vector<std::vector<std::string>>{
           {"select", "--gen", "lemma2:9", "--algo", "comb", "--seed", "4", "--json"},
           {"sort", "--gen", "uniform01:12", "--algo", "compl-sort", "--seed", "4", "--json"}}) {
    const auto r = cli(args);
    REQUIRE(r.code == kExitOk);
    std::string line = r.out;
    line.pop_back();  // trailing newline
    CHECK(Json::parse(line).dump() == line);
  }
}

TEST_CASE("select from a file") {
  const auto path = scratch() / "fig1.json";
  write(path, R"({"values": [2, 1, 0, 1], "delta": 1.0})");
  const auto r = cli({"select", "--file", path.string(), "--algo", "compl", "--seed", "7", "--json"});
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out).at("winner_value").get<double>() >= 0.0);

  const auto adv = scratch() / "fig1_adv.json";
  write(adv, R"({"kind":"explicit","edges":[[0,2,0],[0,1,0],[3,0,3],[3,1,3],[3,2,3],[2,1,2]]})");
  const auto g = cli({"select", "--file", path.string(), "--adversary", adv.string(), "--algo",
                      "compl", "--seed", "7", "--json"});
  REQUIRE(g.code == kExitOk);
  CHECK(Json::parse(g.out).at("winner") == 3);
}

TEST_CASE("regular tournament gap") {
  const auto r = cli({"select", "--gen", "lemma1:5", "--algo", "compl", "--seed", "3", "--json"});
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out).at("gap").get<double>() <= 1.0);
}

TEST_CASE("sort separated values exactly") {
  const auto r = cli({"sort", "--gen", "distinct:8", "--algo", "q-sort", "--seed", "5", "--json"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j.at("max_inversion") == 0.0);
  CHECK(j.at("order").size() == 8);
}

TEST_CASE("seed is echoed when omitted") {
  const auto r = cli({"select", "--gen", "zeros:3", "--algo", "seq"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("seed: ") != std::string::npos);
  CHECK(r.out.find("queries: 2") != std::string::npos);
}

TEST_CASE("input errors exit with 2") {
  CHECK(cli({"select", "--gen", "zeros:3", "--algo", "seq", "--bogus"}).code == kExitInputError);
  CHECK(cli({}).code == kExitInputError);
  CHECK(cli({"select", "--gen", "zeros:3"}).code == kExitInputError);
  CHECK(cli({"select", "--gen", "nope:3", "--algo", "seq"}).code == kExitInputError);
  CHECK(cli({"select", "--gen", "zeros:3", "--algo", "nope"}).code == kExitInputError);
  CHECK(cli({"select", "--gen", "lemma1:4", "--algo", "seq"}).code == kExitInputError);
  CHECK(cli({"select", "--file", "/nonexistent.json", "--algo", "seq"}).code == kExitInputError);
  CHECK(cli({"sort", "--gen", "zeros:3", "--algo", "q-select"}).code == kExitInputError);
  CHECK(cli({"select", "--gen", "zeros:3", "--algo", "ko-mod", "--epsilon", "2"}).code ==
        kExitInputError);
  const auto bad = scratch() / "bad.json";
  write(bad, "{not json");
  CHECK(cli({"select", "--file", bad.string(), "--algo", "seq"}).code == kExitInputError);
  CHECK(cli({"bench", "--config", bad.string()}).code == kExitInputError);
  CHECK(cli({"report", "--out", scratch().string()}).code == kExitInputError);
}

TEST_CASE("bench writes reproducible CSV") {
  const auto cfg = scratch() / "bench.json";
  write(cfg, R"([{"algorithm":"q-select","instance":{"gen":"uniform01:100"},"adversary":"smaller-wins","trials":50},
                 {"algorithm":"compl","instance":"zeros:20","adversary":{"kind":"construction","name":"pivot-killer"},"trials":5}])");
  const auto out1 = scratch() / "b1.csv";
  const auto out2 = scratch() / "b2.csv";
  REQUIRE(cli({"bench", "--config", cfg.string(), "--seed", "9", "--out", out1.string()}).code == 0);
  REQUIRE(cli({"bench", "--config", cfg.string(), "--seed", "9", "--out", out2.string(),
               "--threads", "3"}).code == 0);
  std::ifstream a(out1), b(out2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  const std::string csv = sa.str();
  CHECK(csv == sb.str());
  CHECK(csv.rfind("algorithm,adversary,n,t,epsilon,trials,error_rate,ci_lo,ci_hi,q_mean,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("scheffe subcommand") {
  const auto path = scratch() / "cands.json";
  write(path, R"({"support": 3, "p0": [0.5, 0.3, 0.2],
                  "candidates": [[0.2, 0.3, 0.5], [0.45, 0.35, 0.2], [1, 0, 0]]})");
  for (const char* method : {"tournament", "quickselect"}) {
    const auto r = cli({"scheffe", "--file", path.string(), "--k", "20000", "--method", method,
                        "--seed", "2", "--json"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j.at("chosen") == 1);
    CHECK(j.at("min_l1").get<double>() == doctest::Approx(0.1));
    CHECK(j.at("ratio").get<double>() == doctest::Approx(1.0));
  }
  const auto mismatch = scratch() / "mismatch.json";
  write(mismatch, R"({"support": 3, "p0": [0.5, 0.3, 0.2], "candidates": [[0.5, 0.5]]})");
  CHECK(cli({"scheffe", "--file", mismatch.string(), "--k", "10", "--seed", "1"}).code ==
        kExitInputError);
  CHECK(cli({"scheffe", "--file", path.string(), "--k", "10", "--method", "x"}).code ==
        kExitInputError);
}

TEST_CASE("installed binary maps errors to exit codes") {
  const std::string bin = ADVSEL_CLI_PATH;
  const int unknown = std::system((bin + " select --bogus > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(unknown) == kExitInputError);
  const int ok = std::system((bin + " select --gen zeros:4 --algo compl --seed 1 > /dev/null").c_str());
  CHECK(WEXITSTATUS(ok) == kExitOk);
}

}  // namespace
}  // namespace advsel
