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

#include "probgreedy/submodular.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace probgreedy {

bool contains(std::span<const GroundElement> set, const GroundElement& e) {
  return std::find(set.begin(), set.end(), e) != set.end();
}

PartitionMatroid::PartitionMatroid(std::vector<int> capacities, std::vector<int> partition_sizes)
    : capacities_(std::move(capacities)), partition_sizes_(std::move(partition_sizes)) {
  if (capacities_.size() != partition_sizes_.size()) {
    throw StructuralError("PartitionMatroid: " + std::to_string(capacities_.size()) +
                          " capacities for " + std::to_string(partition_sizes_.size()) +
                          " partitions");
  }
  for (std::size_t i = 0; i < capacities_.size(); ++i) {
    if (partition_sizes_[i] < 0 || capacities_[i] < 0) {
      throw DomainError("PartitionMatroid: negative size or capacity for agent " +
                        std::to_string(i));
    }
    if (capacities_[i] > partition_sizes_[i]) {
      throw DomainError("PartitionMatroid: capacity " + std::to_string(capacities_[i]) +
                        " exceeds partition size " + std::to_string(partition_sizes_[i]) +
                        " for agent " + std::to_string(i));
    }
  }
}

ElementSet PartitionMatroid::partition(int agent) const {
  ElementSet out;
  const int size = partition_size(agent);
  out.reserve(static_cast<std::size_t>(size));
  for (int b = 0; b < size; ++b) out.push_back({agent, b});
  return out;
}

bool PartitionMatroid::is_valid(const GroundElement& e) const {
  return e.agent >= 0 && e.agent < num_agents() && e.local_id >= 0 &&
         e.local_id < partition_size(e.agent);
}

bool PartitionMatroid::is_independent(std::span<const GroundElement> set) const {
  std::vector<int> used(capacities_.size(), 0);
  for (std::size_t k = 0; k < set.size(); ++k) {
    const auto& e = set[k];
    if (!is_valid(e)) return false;
    if (std::find(set.begin(), set.begin() + static_cast<std::ptrdiff_t>(k), e) !=
        set.begin() + static_cast<std::ptrdiff_t>(k)) {
      return false;
    }
    if (++used[static_cast<std::size_t>(e.agent)] > capacity(e.agent)) return false;
  }
  return true;
}

double UtilityOracle::gain(const GroundElement& s, std::span<const GroundElement> set) const {
  ElementSet with(set.begin(), set.end());
  with.push_back(s);
  return value(with) - value(set);
}

double marginal_gain(const UtilityOracle& oracle, const GroundElement& s,
                     std::span<const GroundElement> set) {
  if (contains(set, s)) {
    throw ContractViolation("marginal_gain: element (" + std::to_string(s.agent) + ", " +
                            std::to_string(s.local_id) + ") is already in the set");
  }
  return oracle.gain(s, set);
}

namespace {

// Appends capacity(agent) greedy picks to `picks`. `context` holds whatever
// the agent already knows; picks are appended to it as they are made.
void local_greedy(const UtilityOracle& oracle, const PartitionMatroid& matroid, int agent,
                  ElementSet& context, ElementSet& picks, std::int64_t& calls) {
  const int size = matroid.partition_size(agent);
  std::vector<bool> taken(static_cast<std::size_t>(size), false);
  for (int j = 0; j < matroid.capacity(agent); ++j) {
    int best = -1;
    double best_gain = 0.0;
    for (int b = 0; b < size; ++b) {
      if (taken[static_cast<std::size_t>(b)]) continue;
      const double g = oracle.gain({agent, b}, context);
      ++calls;
      if (best < 0 || g > best_gain) {
        best = b;
        best_gain = g;
      }
    }
    if (best < 0) {
      throw StructuralError("greedy: agent " + std::to_string(agent) +
                            " ran out of candidates");
    }
    taken[static_cast<std::size_t>(best)] = true;
    context.push_back({agent, best});
    picks.push_back({agent, best});
  }
}

SelectionResult finish(const UtilityOracle& oracle, std::vector<ElementSet> per_agent,
                       std::int64_t calls) {
  SelectionResult r;
  for (const auto& picks : per_agent) r.selected.insert(r.selected.end(), picks.begin(), picks.end());
  r.per_agent = std::move(per_agent);
  r.value = oracle.value(r.selected);
  r.oracle_calls = calls;
  return r;
}

}  // namespace

SelectionResult sequential_greedy(const UtilityOracle& oracle, const PartitionMatroid& matroid) {
  const int n = matroid.num_agents();
  std::vector<ElementSet> per_agent(static_cast<std::size_t>(n));
  ElementSet chosen;
  std::int64_t calls = 0;
  for (int i = 0; i < n; ++i) {
    local_greedy(oracle, matroid, i, chosen, per_agent[static_cast<std::size_t>(i)], calls);
  }
  return finish(oracle, std::move(per_agent), calls);
}

SelectionResult decentralized_greedy(const UtilityOracle& oracle, const PartitionMatroid& matroid,
                                     const OutcomeMask& mask) {
  const int n = matroid.num_agents();
  if (mask.size() != std::max(n - 1, 0)) {
    throw StructuralError("decentralized_greedy: mask has " + std::to_string(mask.size()) +
                          " edges, chain of " + std::to_string(n) + " agents needs " +
                          std::to_string(std::max(n - 1, 0)));
  }
  std::vector<ElementSet> per_agent(static_cast<std::size_t>(n));
  ElementSet held;  // what the previous agent forwards
  std::int64_t calls = 0;
  for (int i = 0; i < n; ++i) {
    ElementSet context;
    if (i > 0 && mask[i - 1]) context = std::move(held);
    local_greedy(oracle, matroid, i, context, per_agent[static_cast<std::size_t>(i)], calls);
    held = std::move(context);
  }
  return finish(oracle, std::move(per_agent), calls);
}

namespace {

void combinations(int size, int k, int start, ElementSet& current, int agent,
                  std::vector<ElementSet>& out) {
  if (static_cast<int>(current.size()) == k) {
    out.push_back(current);
    return;
  }
  for (int b = start; b < size; ++b) {
    current.push_back({agent, b});
    combinations(size, k, b + 1, current, agent, out);
    current.pop_back();
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace

double count_independent_sets(const PartitionMatroid& matroid) {
  double total = 1.0;
  for (int i = 0; i < matroid.num_agents(); ++i) {
    double per_agent = 0.0;
    for (int k = 0; k <= matroid.capacity(i); ++k) per_agent += binomial(matroid.partition_size(i), k);
    total *= per_agent;
  }
  return total;
}

SelectionResult brute_force_optimum(const UtilityOracle& oracle, const PartitionMatroid& matroid,
                                    double cap) {
  const double count = count_independent_sets(matroid);
  if (count > cap) throw CapExceeded("brute_force_optimum: independent sets", count, cap);

  const int n = matroid.num_agents();
  std::vector<std::vector<ElementSet>> choices(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ElementSet scratch;
    for (int k = 0; k <= matroid.capacity(i); ++k) {
      combinations(matroid.partition_size(i), k, 0, scratch, i, choices[static_cast<std::size_t>(i)]);
    }
  }

  std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
  SelectionResult best;
  bool have_best = false;
  std::int64_t calls = 0;
  ElementSet candidate;
  while (true) {
    candidate.clear();
    for (int i = 0; i < n; ++i) {
      const auto& pick = choices[static_cast<std::size_t>(i)][digit[static_cast<std::size_t>(i)]];
      candidate.insert(candidate.end(), pick.begin(), pick.end());
    }
    const double v = oracle.value(candidate);
    ++calls;
    if (!have_best || v > best.value) {
      have_best = true;
      best.value = v;
      best.per_agent.assign(static_cast<std::size_t>(n), {});
      for (int i = 0; i < n; ++i) {
        best.per_agent[static_cast<std::size_t>(i)] =
            choices[static_cast<std::size_t>(i)][digit[static_cast<std::size_t>(i)]];
      }
      best.selected = candidate;
    }
    int pos = n - 1;
    while (pos >= 0) {
      auto& d = digit[static_cast<std::size_t>(pos)];
      if (++d < choices[static_cast<std::size_t>(pos)].size()) break;
      d = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  best.oracle_calls = calls;
  return best;
}

double deterministic_gap_bound(int n, int w) {
  if (n < 1 || w < 1 || w > n) {
    throw DomainError("deterministic_gap_bound: clique number " + std::to_string(w) +
                      " outside [1, " + std::to_string(n) + "]");
  }
  return 1.0 / static_cast<double>(2 + n - w);
}

}  // namespace probgreedy
