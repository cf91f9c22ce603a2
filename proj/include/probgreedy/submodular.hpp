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

#ifndef PROBGREEDY_SUBMODULAR_HPP_
#define PROBGREEDY_SUBMODULAR_HPP_

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "probgreedy/errors.hpp"
#include "probgreedy/outcome_mask.hpp"

namespace probgreedy {

// A strategy owned by one agent. Tagging by owner keeps the local strategy
// sets disjoint even when two agents can reach the same physical option.
struct GroundElement {
  int agent = 0;     // zero-based chain position
  int local_id = 0;  // index into that agent's strategy set

  friend auto operator<=>(const GroundElement&, const GroundElement&) = default;
};

using ElementSet = std::vector<GroundElement>;

bool contains(std::span<const GroundElement> set, const GroundElement& e);

// Independence system { S : |S ∩ P_i| <= capacity_i for every agent i }.
class PartitionMatroid {
 public:
  PartitionMatroid(std::vector<int> capacities, std::vector<int> partition_sizes);

  int num_agents() const { return static_cast<int>(capacities_.size()); }
  int capacity(int agent) const { return capacities_.at(static_cast<std::size_t>(agent)); }
  int partition_size(int agent) const {
    return partition_sizes_.at(static_cast<std::size_t>(agent));
  }
  const std::vector<int>& capacities() const { return capacities_; }
  const std::vector<int>& partition_sizes() const { return partition_sizes_; }

  // The local strategy set P_agent in local_id order.
  ElementSet partition(int agent) const;
  bool is_valid(const GroundElement& e) const;
  bool is_independent(std::span<const GroundElement> set) const;

 private:
  std::vector<int> capacities_;
  std::vector<int> partition_sizes_;
};

// Value-oracle access to a normal set function f : 2^P -> R>=0.
//
// Implementations must tolerate concurrent calls to the const members.
class UtilityOracle {
 public:
  virtual ~UtilityOracle() = default;

  virtual double value(std::span<const GroundElement> set) const = 0;

  // f(set ∪ {s}) - f(set) for s not in set. The default evaluates value()
  // twice; oracles with a cheaper increment should override it.
  virtual double gain(const GroundElement& s, std::span<const GroundElement> set) const;
};

struct SelectionResult {
  std::vector<ElementSet> per_agent;
  ElementSet selected;  // union of per_agent
  double value = 0.0;
  std::int64_t oracle_calls = 0;  // marginal-gain (or value) evaluations
};

// Throws ContractViolation when s is already in `set`.
double marginal_gain(const UtilityOracle& oracle, const GroundElement& s,
                     std::span<const GroundElement> set);

// Centralized sequential greedy: agents in index order, each takes exactly
// capacity(i) picks by argmax of marginal gain against everything chosen so
// far. Ties go to the lowest local_id.
SelectionResult sequential_greedy(const UtilityOracle& oracle, const PartitionMatroid& matroid);

// Sequential greedy over an unreliable chain. Agent i > 0 inherits what agent
// i - 1 holds only when mask[i - 1] is delivered; otherwise it starts from the
// empty set. Every agent still makes its capacity(i) picks.
SelectionResult decentralized_greedy(const UtilityOracle& oracle, const PartitionMatroid& matroid,
                                     const OutcomeMask& mask);

inline constexpr double kDefaultBruteForceCap = 1e7;

// Exhaustive maximizer over every independent set. Refuses with CapExceeded
// when the number of independent sets is above `cap`.
SelectionResult brute_force_optimum(const UtilityOracle& oracle, const PartitionMatroid& matroid,
                                    double cap = kDefaultBruteForceCap);

// Number of independent sets of the matroid (as a double; may be huge).
double count_independent_sets(const PartitionMatroid& matroid);

// Worst-case ratio f(greedy) / f(opt) for an information graph with clique
// number w over n agents: 1 / (2 + n - w).
double deterministic_gap_bound(int n, int w);

}  // namespace probgreedy

#endif  // PROBGREEDY_SUBMODULAR_HPP_
