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

// Instances and adversaries as data: JSON formats, built-in generators, and
// assembly of a (instance, adversary factory) pair for sessions.
//
// Instance JSON:   {"values": [..], "delta": 1.0}
// Adversary JSON:  {"kind": "nonadaptive", "policy": "smaller-wins"|"larger-wins"|
//                            "lower-index-wins"|"random", "seed": u64}
//                  {"kind": "construction", "name": "lemma1"|"lemma2"|"seq-hard"|
//                            "komod-hard"|"pivot-killer", "params": {..}}
//                  {"kind": "explicit", "edges": [[i, j, winner], ..]}
// An optional "memoize": true on any spec repeats the first answer per pair.

#ifndef ADVSEL_SCENARIO_HPP_
#define ADVSEL_SCENARIO_HPP_

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "advsel/adversary.hpp"
#include "advsel/core.hpp"
#include "advsel/rng.hpp"
#include "json.hpp"

namespace advsel {

using Json = nlohmann::json;

Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& instance);
Instance load_instance_file(const std::string& path);
Json load_json_file(const std::string& path);

struct AdversarySpec {
  enum class Kind { kNonAdaptive, kConstruction, kExplicit };
  Kind kind = Kind::kNonAdaptive;
  FreeEdgePolicy policy = FreeEdgePolicy::kSmallerWins;
  std::uint64_t seed = 0;
  std::string name;  // construction name
  Json params = Json::object();
  std::vector<std::array<Index, 3>> edges;
  bool memoize = false;
};

AdversarySpec adversary_from_json(const Json& j);
Json adversary_to_json(const AdversarySpec& spec);
// Accepts inline JSON, a policy or construction name ("smaller-wins",
// "pivot-killer", ...), or a path to a JSON file.
AdversarySpec adversary_from_string(std::string_view text);
std::string adversary_label(const AdversarySpec& spec);

std::string_view policy_name(FreeEdgePolicy p);
std::optional<FreeEdgePolicy> parse_policy(std::string_view name);

// "zeros:n", "distinct:n", "uniform01:n", "lemma1:n", "lemma2:n", "seqhard:r,s", "komodhard:n".
struct GeneratorSpec {
  std::string name;
  std::vector<std::size_t> args;
};
GeneratorSpec parse_generator(std::string_view text);
bool is_construction_generator(const GeneratorSpec& g);

struct InstanceSource {
  std::optional<Instance> values;    // explicit instance
  std::optional<std::string> generator;
};
InstanceSource instance_source_from_json(const Json& j);
Json instance_source_to_json(const InstanceSource& src);

// Immutable once built; shareable across concurrent trials. Each session asks
// for its own adversary object.
struct Scenario {
  std::shared_ptr<const Instance> instance;
  std::shared_ptr<const TournamentGraph> graph;  // set for non-adaptive adversaries
  bool adaptive = false;
  bool memoize = false;
  std::string label;
  std::optional<Index> special;

  std::unique_ptr<Adversary> make_adversary() const;
};

// Either argument may be empty (but not both). Randomness for generators and
// seeded constructions comes from `seed`.
Scenario build_scenario(const std::optional<InstanceSource>& source,
                        const std::optional<AdversarySpec>& adversary, RngSeed seed);

}  // namespace advsel

#endif  // ADVSEL_SCENARIO_HPP_
