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

// probgreedy: command-line front end.
//
//   probgreedy alpha     --config chain.json [--engine dp|paper|enumerate] [--csv out.csv]
//   probgreedy reinforce --config chain.json
//   probgreedy simulate  --config bench.json [--iterations N] [--seed N] [--permutation DBHGFCAE]
//   probgreedy enumerate --config chain.json
//   probgreedy solve     --config bench.json [--permutation ...]
//
// Exit codes: 0 success, 1 other failure, 2 config error, 3 enumeration cap exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "probgreedy/report.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> engine;
  std::optional<int> iterations;
  std::optional<std::string> csv;
  std::vector<std::string> permutations;
};

void add_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config_path, "experiment config (JSON)")->required();
  cmd->add_option("--seed", flags.seed, "RNG seed");
  cmd->add_option("--engine", flags.engine, "dp | paper | enumerate");
  cmd->add_option("--iterations", flags.iterations, "Monte Carlo iterations")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--csv", flags.csv, "write the CSV report to this path");
  cmd->add_option("--permutation", flags.permutations,
                  "agent order, e.g. DBHGFCAE (repeatable; replaces config permutations)");
}

probgreedy::ExperimentConfig resolve(const Flags& flags) {
  auto config = probgreedy::load_config(flags.config_path);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.engine) {
    try {
      config.engine = probgreedy::parse_engine(*flags.engine);
    } catch (const probgreedy::DomainError& e) {
      throw probgreedy::ConfigError("--engine", e.what());
    }
  }
  if (flags.iterations) config.iterations = *flags.iterations;
  if (flags.csv) config.csv_path = *flags.csv;
  if (!flags.permutations.empty()) config.permutations = flags.permutations;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential greedy under unreliable chain communication"};
  app.require_subcommand(1);
  Flags flags;

  using Command = probgreedy::Report (*)(const probgreedy::ExperimentConfig&);
  const std::vector<std::pair<const char*, Command>> commands = {
      {"alpha", &probgreedy::cmd_alpha},
      {"reinforce", &probgreedy::cmd_reinforce},
      {"simulate", &probgreedy::cmd_simulate},
      {"enumerate", &probgreedy::cmd_enumerate},
      {"solve", &probgreedy::cmd_solve},
  };
  const std::vector<std::string> help = {
      "probabilistic optimality gap and clique-number distribution",
      "which edge to grant an extra transmission trial",
      "Monte Carlo coverage benchmark, with and without reinforcement",
      "list every outcome mask with its probability and clique number",
      "run centralized and decentralized greedy on one instance and mask",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t k = 0; k < commands.size(); ++k) {
    subs.push_back(app.add_subcommand(commands[k].first, help[k]));
    add_flags(subs.back(), flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto config = resolve(flags);
    for (std::size_t k = 0; k < commands.size(); ++k) {
      if (!subs[k]->parsed()) continue;
      const probgreedy::Report report = commands[k].second(config);
      std::cout << report.text;
      if (config.csv_path) {
        std::ofstream out(*config.csv_path, std::ios::binary);
        if (!out) {
          std::cerr << "error: cannot write " << *config.csv_path << "\n";
          return 1;
        }
        out << report.csv;
      }
    }
  } catch (const probgreedy::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const probgreedy::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const probgreedy::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const probgreedy::StructuralError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
