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

#ifndef PROBGREEDY_CONFIG_HPP_
#define PROBGREEDY_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "probgreedy/chain_prob.hpp"
#include "probgreedy/coverage.hpp"

namespace probgreedy {

// Malformed or inconsistent experiment configuration. `where` is either
// "line L, column C" for syntax errors or the offending field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct ChainConfig {
  int n = 0;
  std::vector<double> base_probs;   // per chain edge (n - 1)
  std::vector<int> trials;          // per chain edge, defaults to 1
  std::vector<double> agent_probs;  // per agent (n), follows the agent when reordered
};

struct InstanceConfig {
  std::optional<std::string> path;
  InstanceParams params;
  std::optional<std::uint64_t> seed;
};

// One experiment. Documented defaults: engine dp, 10000 iterations,
// enumeration cap 24 edges, 200 best-known restarts, seed 0.
struct ExperimentConfig {
  std::optional<ChainConfig> chain;
  std::optional<InstanceConfig> instance;
  std::vector<std::string> permutations;
  int iterations = 10000;
  Engine engine = Engine::kDp;
  int cap = kDefaultEnumerationCap;
  std::uint64_t seed = 0;
  int budget = 0;
  int restarts = 200;
  std::optional<std::string> mask;
  std::optional<std::string> csv_path;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

// Chain for a fixed position order. With agent_probs the edge at position k
// takes the reliability of agent order[k]; base_probs are positional.
ChainSpec build_chain(const ExperimentConfig& config, const std::vector<int>& order);
ChainSpec build_chain(const ExperimentConfig& config);

// Loads or generates the configured instance.
CoverageInstance build_instance(const ExperimentConfig& config);

}  // namespace probgreedy

#endif  // PROBGREEDY_CONFIG_HPP_
