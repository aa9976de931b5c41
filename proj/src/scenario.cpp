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

#include "advsel/scenario.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace advsel {

namespace {

constexpr std::array<std::pair<FreeEdgePolicy, std::string_view>, 4> kPolicies{{
    {FreeEdgePolicy::kSmallerWins, "smaller-wins"},
    {FreeEdgePolicy::kLargerWins, "larger-wins"},
    {FreeEdgePolicy::kLowerIndexWins, "lower-index-wins"},
    {FreeEdgePolicy::kSeededRandom, "random"},
}};

// generator name <-> adversary construction name
constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kConstructions{{
    {"lemma1", "lemma1"},
    {"lemma2", "lemma2"},
    {"seqhard", "seq-hard"},
    {"komodhard", "komod-hard"},
}};

std::optional<std::string_view> generator_for_construction(std::string_view adversary_name) {
  for (const auto& [gen, adv] : kConstructions) {
    if (adv == adversary_name) return gen;
  }
  return std::nullopt;
}

std::size_t size_arg(const GeneratorSpec& g, std::size_t expected) {
  if (g.args.size() != expected) {
    throw InputError("generator '" + g.name + "' expects " + std::to_string(expected) +
                     " argument(s)");
  }
  return g.args.front();
}

Construction build_construction(const GeneratorSpec& g, Rng& rng) {
  const RngSeed sub{rng.next(), 0};
  try {
    if (g.name == "lemma1") return lemma_one_construction(size_arg(g, 1), sub);
    if (g.name == "lemma2") return lemma_two_construction(size_arg(g, 1), sub);
    if (g.name == "komodhard") return komod_hard_instance(size_arg(g, 1), sub);
    if (g.name == "seqhard") {
      size_arg(g, 2);
      return sequential_hard_instance(g.args[0], g.args[1]);
    }
  } catch (const PreconditionError& e) {
    throw InputError(std::string("bad construction parameters: ") + e.what());
  }
  throw InputError("unknown construction generator '" + g.name + "'");
}

Instance generate_plain(const GeneratorSpec& g, Rng& rng) {
  const std::size_t n = size_arg(g, 1);
  if (n == 0) throw InputError("generator size must be >= 1");
  std::vector<double> values(n, 0.0);
  if (g.name == "zeros") {
    // all zero
  } else if (g.name == "distinct") {
    // Gaps of 2 exceed the unit threshold: every comparison is forced.
    std::vector<Index> rank = all_indices(n);
    rng.shuffle(std::span<Index>(rank));
    for (std::size_t i = 0; i < n; ++i) values[i] = 2.0 * static_cast<double>(rank[i]);
  } else if (g.name == "uniform01") {
    for (double& v : values) v = rng.coin() ? 1.0 : 0.0;
  } else {
    throw InputError("unknown generator '" + g.name + "'");
  }
  return Instance(std::move(values));
}

GeneratorSpec generator_from_params(std::string_view gen_name, const Json& params) {
  GeneratorSpec g{std::string(gen_name), {}};
  auto need = [&](const char* key) {
    if (!params.contains(key)) throw InputError(std::string("construction needs param '") + key + "'");
    return params.at(key).get<std::size_t>();
  };
  if (gen_name == "seqhard") {
    g.args = {need("r"), need("s")};
  } else {
    g.args = {need("n")};
  }
  return g;
}

}  // namespace

std::string_view policy_name(FreeEdgePolicy p) {
  for (const auto& [id, name] : kPolicies) {
    if (id == p) return name;
  }
  return "unknown";
}

std::optional<FreeEdgePolicy> parse_policy(std::string_view name) {
  for (const auto& [id, n] : kPolicies) {
    if (n == name) return id;
  }
  if (name == "seeded-random") return FreeEdgePolicy::kSeededRandom;
  return std::nullopt;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("invalid JSON in '" + path + "': " + e.what());
  }
}

Instance instance_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("values")) throw InputError("instance JSON needs 'values'");
    auto values = j.at("values").get<std::vector<double>>();
    const double delta = j.value("delta", 1.0);
    return Instance(std::move(values), delta);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed instance JSON: ") + e.what());
  } catch (const PreconditionError& e) {
    throw InputError(std::string("invalid instance: ") + e.what());
  }
}

Json instance_to_json(const Instance& instance) {
  return Json{{"values", std::vector<double>(instance.values().begin(), instance.values().end())},
              {"delta", instance.delta()}};
}

Instance load_instance_file(const std::string& path) { return instance_from_json(load_json_file(path)); }

AdversarySpec adversary_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw InputError("adversary spec must be a JSON object");
    AdversarySpec spec;
    const auto kind = j.at("kind").get<std::string>();
    spec.memoize = j.value("memoize", false);
    if (kind == "nonadaptive") {
      spec.kind = AdversarySpec::Kind::kNonAdaptive;
      const auto policy = j.value("policy", std::string("smaller-wins"));
      auto p = parse_policy(policy);
      if (!p) throw InputError("unknown free-edge policy '" + policy + "'");
      spec.policy = *p;
      spec.seed = j.value("seed", std::uint64_t{0});
    } else if (kind == "construction") {
      spec.kind = AdversarySpec::Kind::kConstruction;
      spec.name = j.at("name").get<std::string>();
      if (spec.name != "pivot-killer" && !generator_for_construction(spec.name)) {
        throw InputError("unknown construction '" + spec.name + "'");
      }
      spec.params = j.value("params", Json::object());
    } else if (kind == "explicit") {
      spec.kind = AdversarySpec::Kind::kExplicit;
      for (const auto& e : j.at("edges")) {
        auto triple = e.get<std::vector<Index>>();
        if (triple.size() != 3) throw InputError("explicit edge must be [i, j, winner]");
        spec.edges.push_back({triple[0], triple[1], triple[2]});
      }
    } else {
      throw InputError("unknown adversary kind '" + kind + "'");
    }
    return spec;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed adversary JSON: ") + e.what());
  }
}

Json adversary_to_json(const AdversarySpec& spec) {
  Json j;
  switch (spec.kind) {
    case AdversarySpec::Kind::kNonAdaptive:
      j = {{"kind", "nonadaptive"}, {"policy", policy_name(spec.policy)}, {"seed", spec.seed}};
      break;
    case AdversarySpec::Kind::kConstruction:
      j = {{"kind", "construction"}, {"name", spec.name}, {"params", spec.params}};
      break;
    case AdversarySpec::Kind::kExplicit: {
      Json edges = Json::array();
      for (const auto& e : spec.edges) edges.push_back({e[0], e[1], e[2]});
      j = {{"kind", "explicit"}, {"edges", edges}};
      break;
    }
  }
  if (spec.memoize) j["memoize"] = true;
  return j;
}

AdversarySpec adversary_from_string(std::string_view text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return adversary_from_json(Json::parse(text));
    } catch (const Json::exception& e) {
      throw InputError(std::string("invalid adversary JSON: ") + e.what());
    }
  }
  if (auto p = parse_policy(text)) {
    AdversarySpec spec;
    spec.policy = *p;
    return spec;
  }
  if (text == "pivot-killer") {
    AdversarySpec spec;
    spec.kind = AdversarySpec::Kind::kConstruction;
    spec.name = "pivot-killer";
    return spec;
  }
  if (std::filesystem::exists(std::string(text))) {
    return adversary_from_json(load_json_file(std::string(text)));
  }
  throw InputError("unrecognized adversary '" + std::string(text) + "'");
}

std::string adversary_label(const AdversarySpec& spec) {
  switch (spec.kind) {
    case AdversarySpec::Kind::kNonAdaptive:
      return std::string(policy_name(spec.policy));
    case AdversarySpec::Kind::kConstruction:
      return spec.name;
    case AdversarySpec::Kind::kExplicit:
      return "explicit";
  }
  return "unknown";
}

GeneratorSpec parse_generator(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("generator must look like name:args");
  GeneratorSpec g{std::string(text.substr(0, colon)), {}};
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view tok = rest.substr(0, comma);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
      throw InputError("bad generator argument '" + std::string(tok) + "'");
    }
    g.args.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (g.args.empty()) throw InputError("generator needs at least one argument");
  return g;
}

bool is_construction_generator(const GeneratorSpec& g) {
  for (const auto& [gen, adv] : kConstructions) {
    if (gen == g.name) return true;
  }
  return false;
}

InstanceSource instance_source_from_json(const Json& j) {
  InstanceSource src;
  if (j.is_string()) {
    src.generator = j.get<std::string>();
  } else if (j.is_object() && j.contains("gen")) {
    src.generator = j.at("gen").get<std::string>();
  } else if (j.is_object() && j.contains("file")) {
    src.values = load_instance_file(j.at("file").get<std::string>());
  } else {
    src.values = instance_from_json(j);
  }
  return src;
}

Json instance_source_to_json(const InstanceSource& src) {
  if (src.generator) return Json{{"gen", *src.generator}};
  if (src.values) return instance_to_json(*src.values);
  return nullptr;
}

std::unique_ptr<Adversary> Scenario::make_adversary() const {
  std::unique_ptr<Adversary> adv;
  if (adaptive) {
    adv = pivot_killer_strategy();
  } else {
    adv = std::make_unique<GraphAdversary>(graph);
  }
  if (memoize) adv = std::make_unique<MemoizingAdversary>(std::move(adv));
  return adv;
}

Scenario build_scenario(const std::optional<InstanceSource>& source,
                        const std::optional<AdversarySpec>& adversary, RngSeed seed) {
  Rng rng(seed);
  std::optional<Construction> cons;
  std::optional<Instance> inst;

  if (source && source->generator) {
    const auto g = parse_generator(*source->generator);
    if (is_construction_generator(g)) {
      cons = build_construction(g, rng);
    } else {
      inst = generate_plain(g, rng);
    }
  } else if (source && source->values) {
    inst = *source->values;
  }

  const bool graph_construction = adversary &&
                                  adversary->kind == AdversarySpec::Kind::kConstruction &&
                                  adversary->name != "pivot-killer";
  if (graph_construction) {
    const auto gen_name = *generator_for_construction(adversary->name);
    if (cons) {
      if (source && parse_generator(*source->generator).name != gen_name) {
        throw InputError("instance generator and adversary construction disagree");
      }
    } else if (inst) {
      throw InputError("construction '" + adversary->name +
                       "' defines its own instance; drop the explicit instance");
    } else {
      cons = build_construction(generator_from_params(gen_name, adversary->params), rng);
    }
  }
  if (cons) inst = cons->instance;
  if (!inst) throw InputError("no instance given");

  Scenario sc;
  sc.instance = std::make_shared<const Instance>(*inst);
  if (cons) sc.special = cons->special;

  if (!adversary) {
    if (cons) {
      sc.graph = std::make_shared<const TournamentGraph>(cons->graph);
      sc.label = std::string(source && source->generator ? parse_generator(*source->generator).name
                                                         : "construction");
    } else {
      sc.graph = std::make_shared<const TournamentGraph>(
          build_nonadaptive(*inst, FreeEdgePolicy::kSmallerWins));
      sc.label = "smaller-wins";
    }
    return sc;
  }

  sc.memoize = adversary->memoize;
  sc.label = adversary_label(*adversary);
  try {
    switch (adversary->kind) {
      case AdversarySpec::Kind::kNonAdaptive:
        sc.graph = std::make_shared<const TournamentGraph>(
            build_nonadaptive(*inst, adversary->policy, RngSeed{adversary->seed, 0}));
        break;
      case AdversarySpec::Kind::kConstruction:
        if (adversary->name == "pivot-killer") {
          sc.adaptive = true;
        } else {
          sc.graph = std::make_shared<const TournamentGraph>(cons->graph);
        }
        break;
      case AdversarySpec::Kind::kExplicit:
        sc.graph = std::make_shared<const TournamentGraph>(
            TournamentGraph::from_edges(*inst, adversary->edges));
        break;
    }
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  }
  return sc;
}

}  // namespace advsel
