// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "probgreedy/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace probgreedy {

using nlohmann::json;

namespace {

std::string location_of(std::string_view text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void reject_unknown(const json& obj, const std::string& path, std::set<std::string> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) {
      throw ConfigError(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
    }
  }
}

const json& object_at(const json& parent, const char* key, const std::string& path) {
  const json& j = parent.at(key);
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  return j;
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

std::int64_t get_integer(const json& j, const std::string& path, std::int64_t lo,
                         std::int64_t hi) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  std::int64_t v = 0;
  if (j.is_number_unsigned()) {
    const auto u = j.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(hi)) throw ConfigError(path, "value out of range");
    v = static_cast<std::int64_t>(u);
  } else {
    v = j.get<std::int64_t>();
  }
  if (v < lo || v > hi) {
    throw ConfigError(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "]");
  }
  return v;
}

std::uint64_t get_seed(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ConfigError(path, "expected a non-negative integer seed");
  }
  return j.get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> get_probs(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of probabilities");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = path + "[" + std::to_string(k) + "]";
    const double p = get_number(j[k], at);
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(at, "probability outside [0, 1]");
    out.push_back(p);
  }
  return out;
}

ChainConfig parse_chain(const json& j) {
  reject_unknown(j, "chain", {"n", "base_probs", "trials", "agent_probs"});
  ChainConfig c;
  if (!j.contains("n")) throw ConfigError("chain.n", "missing required field");
  c.n = static_cast<int>(get_integer(j["n"], "chain.n", 1, 1 << 20));
  if (j.contains("base_probs")) c.base_probs = get_probs(j["base_probs"], "chain.base_probs");
  if (j.contains("agent_probs")) c.agent_probs = get_probs(j["agent_probs"], "chain.agent_probs");
  if (j.contains("trials")) {
    const auto& t = j["trials"];
    if (!t.is_array()) throw ConfigError("chain.trials", "expected an array of integers");
    for (std::size_t k = 0; k < t.size(); ++k) {
      c.trials.push_back(static_cast<int>(
          get_integer(t[k], "chain.trials[" + std::to_string(k) + "]", 1, 1 << 20)));
    }
  }
  if (!c.base_probs.empty() && !c.agent_probs.empty()) {
    throw ConfigError("chain", "give either base_probs or agent_probs, not both");
  }
  if (c.base_probs.empty() && c.agent_probs.empty() && c.n > 1) {
    throw ConfigError("chain", "missing base_probs (per edge) or agent_probs (per agent)");
  }
  if (!c.base_probs.empty() && static_cast<int>(c.base_probs.size()) != c.n - 1) {
    throw ConfigError("chain.base_probs", std::to_string(c.base_probs.size()) +
                                              " entries, chain of " + std::to_string(c.n) +
                                              " agents needs " + std::to_string(c.n - 1));
  }
  if (!c.agent_probs.empty() && static_cast<int>(c.agent_probs.size()) != c.n) {
    throw ConfigError("chain.agent_probs", std::to_string(c.agent_probs.size()) +
                                               " entries, expected one per agent (" +
                                               std::to_string(c.n) + ")");
  }
  if (!c.trials.empty() && static_cast<int>(c.trials.size()) != c.n - 1) {
    throw ConfigError("chain.trials", std::to_string(c.trials.size()) + " entries, expected " +
                                          std::to_string(c.n - 1));
  }
  return c;
}

InstanceConfig parse_instance(const json& j) {
  reject_unknown(j, "instance", {"path", "generate", "seed"});
  InstanceConfig ic;
  if (j.contains("path")) ic.path = get_string(j["path"], "instance.path");
  if (j.contains("seed")) ic.seed = get_seed(j["seed"], "instance.seed");
  if (j.contains("generate")) {
    if (ic.path) throw ConfigError("instance", "give either path or generate, not both");
    const json& g = object_at(j, "generate", "instance.generate");
    reject_unknown(g, "instance.generate",
                   {"n", "num_locations", "locations_per_agent", "num_points", "kappa",
                    "radius_range", "area"});
    auto& p = ic.params;
    auto int_field = [&](const char* key, int& out, int lo) {
      if (g.contains(key)) {
        out = static_cast<int>(
            get_integer(g[key], std::string("instance.generate.") + key, lo, 1 << 24));
      }
    };
    int_field("n", p.num_agents, 1);
    int_field("num_locations", p.num_locations, 1);
    int_field("locations_per_agent", p.locations_per_agent, 0);
    int_field("num_points", p.num_points, 0);
    int_field("kappa", p.kappa, 0);
    auto pair_field = [&](const char* key, double& a, double& b) {
      if (!g.contains(key)) return;
      const std::string path = std::string("instance.generate.") + key;
      const auto& arr = g[key];
      if (!arr.is_array() || arr.size() != 2) throw ConfigError(path, "expected [a, b]");
      a = get_number(arr[0], path + "[0]");
      b = get_number(arr[1], path + "[1]");
    };
    pair_field("radius_range", p.radius_min, p.radius_max);
    pair_field("area", p.width, p.height);
    if (p.locations_per_agent > p.num_locations) {
      throw ConfigError("instance.generate.locations_per_agent", "exceeds num_locations");
    }
    if (p.kappa > p.locations_per_agent) {
      throw ConfigError("instance.generate.kappa", "exceeds locations_per_agent");
    }
    if (!(p.radius_min > 0.0) || p.radius_max < p.radius_min) {
      throw ConfigError("instance.generate.radius_range", "must satisfy 0 < min <= max");
    }
    if (!(p.width > 0.0) || !(p.height > 0.0)) {
      throw ConfigError("instance.generate.area", "width and height must be positive");
    }
  } else if (!ic.path) {
    throw ConfigError("instance", "needs either path or generate");
  }
  return ic;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(location_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!j.is_object()) throw ConfigError("line 1, column 1", "config must be a JSON object");
  reject_unknown(j, "", {"chain", "instance", "permutations", "iterations", "engine", "cap",
                         "seed", "budget", "restarts", "mask", "output"});
  ExperimentConfig c;
  if (j.contains("chain")) c.chain = parse_chain(object_at(j, "chain", "chain"));
  if (j.contains("instance")) c.instance = parse_instance(object_at(j, "instance", "instance"));
  if (j.contains("permutations")) {
    const auto& p = j["permutations"];
    if (!p.is_array()) throw ConfigError("permutations", "expected an array of strings");
    for (std::size_t k = 0; k < p.size(); ++k) {
      c.permutations.push_back(get_string(p[k], "permutations[" + std::to_string(k) + "]"));
    }
  }
  if (j.contains("iterations")) {
    c.iterations = static_cast<int>(get_integer(j["iterations"], "iterations", 1, 1 << 30));
  }
  if (j.contains("engine")) {
    try {
      c.engine = parse_engine(get_string(j["engine"], "engine"));
    } catch (const DomainError& e) {
      throw ConfigError("engine", e.what());
    }
  }
  if (j.contains("cap")) c.cap = static_cast<int>(get_integer(j["cap"], "cap", 0, 62));
  if (j.contains("seed")) c.seed = get_seed(j["seed"], "seed");
  if (j.contains("budget")) c.budget = static_cast<int>(get_integer(j["budget"], "budget", 0, 1 << 16));
  if (j.contains("restarts")) {
    c.restarts = static_cast<int>(get_integer(j["restarts"], "restarts", 0, 1 << 20));
  }
  if (j.contains("mask")) {
    c.mask = get_string(j["mask"], "mask");
    try {
      (void)OutcomeMask::parse(*c.mask);
    } catch (const DomainError& e) {
      throw ConfigError("mask", e.what());
    }
  }
  if (j.contains("output")) {
    const json& o = object_at(j, "output", "output");
    reject_unknown(o, "output", {"csv"});
    if (o.contains("csv")) c.csv_path = get_string(o["csv"], "output.csv");
  }

  if (c.chain && c.mask && static_cast<int>(c.mask->size()) != c.chain->n - 1) {
    throw ConfigError("mask", "has " + std::to_string(c.mask->size()) + " edges, chain needs " +
                                  std::to_string(c.chain->n - 1));
  }
  if (c.chain && c.instance && !c.instance->path && c.chain->n != c.instance->params.num_agents) {
    throw ConfigError("chain.n", "disagrees with instance.generate.n (" +
                                     std::to_string(c.instance->params.num_agents) + ")");
  }
  if (c.chain && c.instance && !c.instance->path && c.mask &&
      static_cast<int>(c.mask->size()) != c.instance->params.num_agents - 1) {
    throw ConfigError("mask", "length disagrees with instance.generate.n");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ChainSpec build_chain(const ExperimentConfig& config, const std::vector<int>& order) {
  if (!config.chain) throw ConfigError("chain", "this command needs a chain section");
  const ChainConfig& c = *config.chain;
  if (static_cast<int>(order.size()) != c.n) {
    throw ConfigError("chain.n", "permutation covers " + std::to_string(order.size()) +
                                     " agents, chain has " + std::to_string(c.n));
  }
  Eigen::VectorXi trials = Eigen::VectorXi::Ones(c.n - 1);
  for (std::size_t k = 0; k < c.trials.size(); ++k) trials[static_cast<Eigen::Index>(k)] = c.trials[k];
  ChainSpec::Vector probs(c.n - 1);
  if (!c.agent_probs.empty()) {
    probs = chain_for_order(c.agent_probs, order).base_probs();
  } else {
    for (int k = 0; k + 1 < c.n; ++k) probs[k] = c.base_probs[static_cast<std::size_t>(k)];
  }
  return ChainSpec(c.n, std::move(probs), std::move(trials));
}

ChainSpec build_chain(const ExperimentConfig& config) {
  if (!config.chain) throw ConfigError("chain", "this command needs a chain section");
  return build_chain(config, identity_permutation(config.chain->n));
}

CoverageInstance build_instance(const ExperimentConfig& config) {
  if (!config.instance) throw ConfigError("instance", "this command needs an instance section");
  const InstanceConfig& ic = *config.instance;
  if (ic.path) {
    try {
      return load_instance(*ic.path);
    } catch (const std::exception& e) {
      throw ConfigError("instance.path", e.what());
    }
  }
  return generate_instance(ic.params, ic.seed.value_or(config.seed));
}

}  // namespace probgreedy
