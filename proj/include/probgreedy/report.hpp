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

#ifndef PROBGREEDY_REPORT_HPP_
#define PROBGREEDY_REPORT_HPP_

#include <string>

#include "probgreedy/config.hpp"

namespace probgreedy {

// Human-readable table plus the CSV document for one command. Every CSV
// starts with a "# probgreedy <command> v1" schema line.
struct Report {
  std::string text;
  std::string csv;
};

inline constexpr int kCsvSchemaVersion = 1;

// alpha_p and the clique-number pmf from every engine, with deviations
// against the dp engine. Enumeration is skipped above the cap unless it is
// the selected engine, in which case CapExceeded propagates.
Report cmd_alpha(const ExperimentConfig& config);

// Single-trial sweep over all edges (best starred) and, for budget > 0, the
// greedy multi-trial allocation trace.
Report cmd_reinforce(const ExperimentConfig& config);

// Per permutation: Monte Carlo mean utility, alpha_p, best reinforcement,
// reinforced mean and alpha_p.
Report cmd_simulate(const ExperimentConfig& config);

// Every outcome mask with its probability and clique number.
Report cmd_enumerate(const ExperimentConfig& config);

// Centralized and decentralized greedy on one instance under one mask.
Report cmd_solve(const ExperimentConfig& config);

// Six significant digits, as used in the text tables.
std::string fmt6(double v);
// Round-trip precision, as used in CSV cells.
std::string fmt17(double v);

}  // namespace probgreedy

#endif  // PROBGREEDY_REPORT_HPP_
