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

#ifndef PROBGREEDY_REINFORCE_HPP_
#define PROBGREEDY_REINFORCE_HPP_

#include <vector>

#include "probgreedy/chain_prob.hpp"

namespace probgreedy {

// Extra transmission trials granted per edge on top of ChainSpec::trials().
struct ReinforcementPlan {
  std::vector<int> extra_trials;  // one entry per edge
  int budget = 0;
  double baseline_alpha = 0.0;
  double final_alpha = 0.0;

  struct Round {
    int edge = 0;
    double alpha = 0.0;  // gap after this round's trial was added
  };
  std::vector<Round> rounds;  // empty for non-greedy plans

  int total() const;
};

struct SweepReport {
  double baseline_alpha = 0.0;
  std::vector<double> per_edge_alpha;  // alpha_p with one extra trial on edge e
  int best_edge = -1;
  double best_alpha = 0.0;
};

ChainSpec apply_plan(const ChainSpec& chain, const ReinforcementPlan& plan);

// alpha_p after one extra trial on `edge`; `chain` is not modified.
double evaluate_single_reinforcement(const ChainSpec& chain, int edge,
                                     Engine engine = Engine::kDp);

// Evaluates every edge; ties go to the lowest edge index. Requires n >= 2.
SweepReport sweep_single_reinforcement(const ChainSpec& chain, Engine engine = Engine::kDp);

// `budget` greedy rounds, each granting one trial to the edge whose increment
// gives the largest alpha_p (lowest index on ties).
ReinforcementPlan greedy_multi_reinforcement(const ChainSpec& chain, int budget,
                                             Engine engine = Engine::kDp);

// Best allocation over every multiset of `budget` edges. Exponential; meant
// for small chains as a reference for the greedy plan.
ReinforcementPlan exhaustive_multi_reinforcement(const ChainSpec& chain, int budget,
                                                 Engine engine = Engine::kDp);

}  // namespace probgreedy

#endif  // PROBGREEDY_REINFORCE_HPP_
