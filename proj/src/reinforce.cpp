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

#include "probgreedy/reinforce.hpp"

#include <numeric>
#include <string>

namespace probgreedy {

int ReinforcementPlan::total() const {
  return std::accumulate(extra_trials.begin(), extra_trials.end(), 0);
}

ChainSpec apply_plan(const ChainSpec& chain, const ReinforcementPlan& plan) {
  if (static_cast<int>(plan.extra_trials.size()) != chain.num_edges()) {
    throw StructuralError("apply_plan: plan covers " + std::to_string(plan.extra_trials.size()) +
                          " edges, chain has " + std::to_string(chain.num_edges()));
  }
  ChainSpec out = chain;
  for (int e = 0; e < chain.num_edges(); ++e) {
    out = out.with_extra_trials(e, plan.extra_trials[static_cast<std::size_t>(e)]);
  }
  return out;
}

double evaluate_single_reinforcement(const ChainSpec& chain, int edge, Engine engine) {
  return alpha_p(chain.with_extra_trials(edge, 1), engine);
}

SweepReport sweep_single_reinforcement(const ChainSpec& chain, Engine engine) {
  if (chain.num_agents() < 2) {
    throw DomainError("sweep_single_reinforcement: chain needs at least 2 agents");
  }
  SweepReport report;
  report.baseline_alpha = alpha_p(chain, engine);
  report.per_edge_alpha.reserve(static_cast<std::size_t>(chain.num_edges()));
  for (int e = 0; e < chain.num_edges(); ++e) {
    const double a = evaluate_single_reinforcement(chain, e, engine);
    report.per_edge_alpha.push_back(a);
    if (report.best_edge < 0 || a > report.best_alpha) {
      report.best_edge = e;
      report.best_alpha = a;
    }
  }
  return report;
}

ReinforcementPlan greedy_multi_reinforcement(const ChainSpec& chain, int budget, Engine engine) {
  if (budget < 1) throw DomainError("greedy_multi_reinforcement: budget must be >= 1");
  if (chain.num_edges() < 1) {
    throw DomainError("greedy_multi_reinforcement: chain has no edges to reinforce");
  }
  ReinforcementPlan plan;
  plan.budget = budget;
  plan.extra_trials.assign(static_cast<std::size_t>(chain.num_edges()), 0);
  plan.baseline_alpha = alpha_p(chain, engine);
  ChainSpec current = chain;
  for (int round = 0; round < budget; ++round) {
    const SweepReport sweep = sweep_single_reinforcement(current, engine);
    plan.extra_trials[static_cast<std::size_t>(sweep.best_edge)] += 1;
    plan.rounds.push_back({sweep.best_edge, sweep.best_alpha});
    current = current.with_extra_trials(sweep.best_edge, 1);
  }
  plan.final_alpha = plan.rounds.back().alpha;
  return plan;
}

namespace {

void visit_allocations(int edge, int remaining, std::vector<int>& alloc,
                       const ChainSpec& chain, Engine engine, ReinforcementPlan& best,
                       bool& have_best) {
  const int m = static_cast<int>(alloc.size());
  if (edge == m - 1) {
    alloc[static_cast<std::size_t>(edge)] = remaining;
    ReinforcementPlan candidate;
    candidate.extra_trials = alloc;
    const double a = alpha_p(apply_plan(chain, candidate), engine);
    if (!have_best || a > best.final_alpha) {
      have_best = true;
      best.extra_trials = alloc;
      best.final_alpha = a;
    }
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    alloc[static_cast<std::size_t>(edge)] = k;
    visit_allocations(edge + 1, remaining - k, alloc, chain, engine, best, have_best);
  }
}

}  // namespace

ReinforcementPlan exhaustive_multi_reinforcement(const ChainSpec& chain, int budget,
                                                 Engine engine) {
  if (budget < 1) throw DomainError("exhaustive_multi_reinforcement: budget must be >= 1");
  if (chain.num_edges() < 1) {
    throw DomainError("exhaustive_multi_reinforcement: chain has no edges to reinforce");
  }
  ReinforcementPlan best;
  best.budget = budget;
  best.baseline_alpha = alpha_p(chain, engine);
  std::vector<int> alloc(static_cast<std::size_t>(chain.num_edges()), 0);
  bool have_best = false;
  visit_allocations(0, budget, alloc, chain, engine, best, have_best);
  return best;
}

}  // namespace probgreedy
