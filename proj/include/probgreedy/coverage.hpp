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

#ifndef PROBGREEDY_COVERAGE_HPP_
#define PROBGREEDY_COVERAGE_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "probgreedy/chain_prob.hpp"
#include "probgreedy/submodular.hpp"

namespace probgreedy {

// Generation parameters for the multi-sensor deployment benchmark. Defaults
// are 8 agents, 25 candidate locations, 12 reachable per agent, 2 sensors
// each and 2200 sample points.
struct InstanceParams {
  int num_agents = 8;
  int num_locations = 25;
  int locations_per_agent = 12;
  int num_points = 2200;
  int kappa = 2;
  double radius_min = 12.0;
  double radius_max = 20.0;
  double width = 100.0;
  double height = 100.0;
};

// Agent i owns elements (i, b) for b indexing agent_locations[i]; element
// (i, b) puts a sensor of radius radii[i][slot] at
// locations.col(agent_locations[i][b]). All slots of one agent share a radius.
struct CoverageInstance {
  std::uint64_t seed = 0;
  Eigen::Matrix2Xd points;
  Eigen::Matrix2Xd locations;
  std::vector<std::vector<int>> agent_locations;
  std::vector<std::vector<double>> radii;
  std::vector<int> kappas;

  int num_agents() const { return static_cast<int>(agent_locations.size()); }
  int num_points() const { return static_cast<int>(points.cols()); }
  double radius(int agent) const { return radii.at(static_cast<std::size_t>(agent)).at(0); }
  PartitionMatroid matroid() const;

  // Throws DomainError/StructuralError on any inconsistency.
  void validate() const;

  friend bool operator==(const CoverageInstance& a, const CoverageInstance& b);
};

CoverageInstance generate_instance(const InstanceParams& params, std::uint64_t seed);

std::string instance_to_json(const CoverageInstance& instance);
CoverageInstance instance_from_json(std::string_view text);
void save_instance(const CoverageInstance& instance, const std::string& path);
CoverageInstance load_instance(const std::string& path);

// f(S) = number of points within distance radius(i) of some selected (i, b).
// Footprints are precomputed as bitsets, so evaluation is a few word ops
// per selected element.
class CoverageOracle : public UtilityOracle {
 public:
  explicit CoverageOracle(const CoverageInstance& instance);

  double value(std::span<const GroundElement> set) const override;
  double gain(const GroundElement& s, std::span<const GroundElement> set) const override;

  int covered(std::span<const GroundElement> set) const;

 private:
  using Bits = std::vector<std::uint64_t>;
  const Bits& footprint(const GroundElement& e) const;
  Bits union_of(std::span<const GroundElement> set) const;

  int words_ = 0;
  std::vector<std::vector<Bits>> footprints_;  // [agent][local_id]
};

// Direct geometric count, without footprint caching.
int coverage_value(const CoverageInstance& instance, std::span<const GroundElement> set);

// Agent orders. order[k] is the original agent placed at chain position k.
// Accepts letters ("DBHGFCAE", A = agent 0) or comma-separated one-based
// indices ("4,2,8,...").
std::vector<int> parse_permutation(std::string_view text, int n);
std::string permutation_label(const std::vector<int>& order);
std::vector<int> identity_permutation(int n);
std::vector<int> inverse_permutation(const std::vector<int>& order);

// Reorders the agent-indexed fields so that position k holds agent order[k].
CoverageInstance apply_permutation(const CoverageInstance& instance, const std::vector<int>& order);

// Per-agent single-shot broadcast reliabilities, i.i.d. U[lo, hi).
std::vector<double> default_agent_probs(int n, std::uint64_t seed, double lo = 0.3,
                                        double hi = 0.9);

// Chain whose edge k carries the broadcast of the agent at position k.
ChainSpec chain_for_order(const std::vector<double>& agent_probs, const std::vector<int>& order);

struct OptimumEstimate {
  double value = 0.0;
  bool exact = false;  // brute force rather than best-known
};

inline constexpr double kExactOptimumCap = 1e6;

// Brute force when the instance has at most kExactOptimumCap independent
// sets; otherwise the best of the full-communication greedy in the given
// order and `restarts` greedy runs over random agent orders.
OptimumEstimate reference_optimum(const CoverageInstance& instance, int restarts,
                                  std::uint64_t seed);

struct MonteCarloReport {
  int iterations = 0;
  double mean_value = 0.0;
  double std_dev = 0.0;  // sample standard deviation of f
  double std_error = 0.0;
  double optimum_value = 0.0;
  double empirical_gap = 0.0;
  double alpha_p = 0.0;
  std::uint64_t seed = 0;
};

// Runs the decentralized greedy on the permuted instance `iterations` times,
// each under an outcome mask drawn from the chain's effective edge
// probabilities. Iteration t draws from its own substream of `seed`.
MonteCarloReport monte_carlo(const CoverageInstance& instance, const ChainSpec& chain,
                             const std::vector<int>& order, int iterations, std::uint64_t seed,
                             double optimum_value);

OutcomeMask sample_mask(const ChainSpec& chain, std::uint64_t seed, std::uint64_t iteration);

}  // namespace probgreedy

#endif  // PROBGREEDY_COVERAGE_HPP_
