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

#include "probgreedy/coverage.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "probgreedy/rng.hpp"

namespace probgreedy {

using nlohmann::json;

PartitionMatroid CoverageInstance::matroid() const {
  std::vector<int> sizes;
  sizes.reserve(agent_locations.size());
  for (const auto& b : agent_locations) sizes.push_back(static_cast<int>(b.size()));
  return PartitionMatroid(kappas, std::move(sizes));
}

void CoverageInstance::validate() const {
  const auto n = agent_locations.size();
  if (radii.size() != n || kappas.size() != n) {
    throw StructuralError("CoverageInstance: " + std::to_string(n) + " agents but " +
                          std::to_string(radii.size()) + " radius rows and " +
                          std::to_string(kappas.size()) + " kappas");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (int loc : agent_locations[i]) {
      if (loc < 0 || loc >= locations.cols()) {
        throw DomainError("CoverageInstance: agent " + std::to_string(i) + " references location " +
                          std::to_string(loc) + " of " + std::to_string(locations.cols()));
      }
    }
    auto sorted = agent_locations[i];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw DomainError("CoverageInstance: agent " + std::to_string(i) +
                        " lists a location twice");
    }
    if (radii[i].empty()) {
      throw StructuralError("CoverageInstance: agent " + std::to_string(i) + " has no radius");
    }
    for (double r : radii[i]) {
      if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("CoverageInstance: radii must be strictly positive (agent " +
                          std::to_string(i) + ")");
      }
      if (r != radii[i].front()) {
        throw DomainError("CoverageInstance: sensor slots of agent " + std::to_string(i) +
                          " have different radii; the utility needs one radius per agent");
      }
    }
  }
  (void)matroid();  // capacity <= partition size
}

bool operator==(const CoverageInstance& a, const CoverageInstance& b) {
  return a.seed == b.seed && a.points.cols() == b.points.cols() && a.points == b.points &&
         a.locations.cols() == b.locations.cols() && a.locations == b.locations &&
         a.agent_locations == b.agent_locations && a.radii == b.radii && a.kappas == b.kappas;
}

CoverageInstance generate_instance(const InstanceParams& params, std::uint64_t seed) {
  if (params.num_agents < 1 || params.num_locations < 1 || params.num_points < 0 ||
      params.locations_per_agent < 0) {
    throw DomainError("generate_instance: counts must be positive");
  }
  if (params.locations_per_agent > params.num_locations) {
    throw DomainError("generate_instance: locations_per_agent " +
                      std::to_string(params.locations_per_agent) + " exceeds num_locations " +
                      std::to_string(params.num_locations));
  }
  if (params.kappa < 0 || params.kappa > params.locations_per_agent) {
    throw DomainError("generate_instance: kappa must lie in [0, locations_per_agent]");
  }
  if (!(params.radius_min > 0.0) || params.radius_max < params.radius_min) {
    throw DomainError("generate_instance: radius range must satisfy 0 < min <= max");
  }
  if (!(params.width > 0.0) || !(params.height > 0.0)) {
    throw DomainError("generate_instance: area must be positive");
  }

  Rng rng(seed);
  CoverageInstance inst;
  inst.seed = seed;
  inst.points.resize(2, params.num_points);
  for (int k = 0; k < params.num_points; ++k) {
    inst.points(0, k) = rng.uniform(0.0, params.width);
    inst.points(1, k) = rng.uniform(0.0, params.height);
  }
  inst.locations.resize(2, params.num_locations);
  for (int k = 0; k < params.num_locations; ++k) {
    inst.locations(0, k) = rng.uniform(0.0, params.width);
    inst.locations(1, k) = rng.uniform(0.0, params.height);
  }
  std::vector<int> pool(static_cast<std::size_t>(params.num_locations));
  for (int i = 0; i < params.num_agents; ++i) {
    std::iota(pool.begin(), pool.end(), 0);
    for (int k = 0; k < params.locations_per_agent; ++k) {
      const auto j = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(params.num_locations - k)));
      std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<int> chosen(pool.begin(), pool.begin() + params.locations_per_agent);
    std::sort(chosen.begin(), chosen.end());
    inst.agent_locations.push_back(std::move(chosen));
  }
  for (int i = 0; i < params.num_agents; ++i) {
    const double r = rng.uniform(params.radius_min, params.radius_max);
    inst.radii.emplace_back(static_cast<std::size_t>(std::max(params.kappa, 1)), r);
    inst.kappas.push_back(params.kappa);
  }
  return inst;
}

namespace {

json matrix_to_json(const Eigen::Matrix2Xd& m) {
  json out = json::array();
  for (Eigen::Index k = 0; k < m.cols(); ++k) out.push_back({m(0, k), m(1, k)});
  return out;
}

Eigen::Matrix2Xd matrix_from_json(const json& j, const char* field) {
  if (!j.is_array()) throw StructuralError(std::string("instance: '") + field + "' must be an array");
  Eigen::Matrix2Xd m(2, static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& p = j[k];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw StructuralError(std::string("instance: ") + field + "[" + std::to_string(k) +
                            "] must be [x, y]");
    }
    m(0, static_cast<Eigen::Index>(k)) = p[0].get<double>();
    m(1, static_cast<Eigen::Index>(k)) = p[1].get<double>();
  }
  return m;
}

const json& require(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) throw StructuralError(std::string("instance: missing field '") + field + "'");
  return *it;
}

}  // namespace

std::string instance_to_json(const CoverageInstance& instance) {
  json j;
  j["seed"] = instance.seed;
  j["points"] = matrix_to_json(instance.points);
  j["locations"] = matrix_to_json(instance.locations);
  j["agent_locations"] = instance.agent_locations;
  j["radii"] = instance.radii;
  j["kappas"] = instance.kappas;
  return j.dump(1) + "\n";
}

CoverageInstance instance_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StructuralError(std::string("instance: ") + e.what());
  }
  if (!j.is_object()) throw StructuralError("instance: document must be an object");
  CoverageInstance inst;
  try {
    inst.seed = require(j, "seed").get<std::uint64_t>();
    inst.points = matrix_from_json(require(j, "points"), "points");
    inst.locations = matrix_from_json(require(j, "locations"), "locations");
    inst.agent_locations = require(j, "agent_locations").get<std::vector<std::vector<int>>>();
    inst.radii = require(j, "radii").get<std::vector<std::vector<double>>>();
    inst.kappas = require(j, "kappas").get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw StructuralError(std::string("instance: ") + e.what());
  }
  inst.validate();
  return inst;
}

void save_instance(const CoverageInstance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance to " + path);
  out << instance_to_json(instance);
}

CoverageInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot read instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

CoverageOracle::CoverageOracle(const CoverageInstance& instance) {
  instance.validate();
  const int points = instance.num_points();
  words_ = (points + 63) / 64;
  footprints_.resize(static_cast<std::size_t>(instance.num_agents()));
  for (int i = 0; i < instance.num_agents(); ++i) {
    const double r2 = instance.radius(i) * instance.radius(i);
    for (int loc : instance.agent_locations[static_cast<std::size_t>(i)]) {
      Bits bits(static_cast<std::size_t>(words_), 0);
      const Eigen::Vector2d c = instance.locations.col(loc);
      for (int k = 0; k < points; ++k) {
        if ((instance.points.col(k) - c).squaredNorm() <= r2) {
          bits[static_cast<std::size_t>(k / 64)] |= std::uint64_t{1} << (k % 64);
        }
      }
      footprints_[static_cast<std::size_t>(i)].push_back(std::move(bits));
    }
  }
}

const CoverageOracle::Bits& CoverageOracle::footprint(const GroundElement& e) const {
  if (e.agent < 0 || e.agent >= static_cast<int>(footprints_.size()) || e.local_id < 0 ||
      e.local_id >= static_cast<int>(footprints_[static_cast<std::size_t>(e.agent)].size())) {
    throw DomainError("CoverageOracle: element (" + std::to_string(e.agent) + ", " +
                      std::to_string(e.local_id) + ") is not in the ground set");
  }
  return footprints_[static_cast<std::size_t>(e.agent)][static_cast<std::size_t>(e.local_id)];
}

CoverageOracle::Bits CoverageOracle::union_of(std::span<const GroundElement> set) const {
  Bits acc(static_cast<std::size_t>(words_), 0);
  for (const auto& e : set) {
    const auto& f = footprint(e);
    for (int w = 0; w < words_; ++w) acc[static_cast<std::size_t>(w)] |= f[static_cast<std::size_t>(w)];
  }
  return acc;
}

int CoverageOracle::covered(std::span<const GroundElement> set) const {
  int total = 0;
  for (std::uint64_t w : union_of(set)) total += std::popcount(w);
  return total;
}

double CoverageOracle::value(std::span<const GroundElement> set) const {
  return static_cast<double>(covered(set));
}

double CoverageOracle::gain(const GroundElement& s, std::span<const GroundElement> set) const {
  const auto& f = footprint(s);
  const Bits acc = union_of(set);
  int fresh = 0;
  for (int w = 0; w < words_; ++w) {
    fresh += std::popcount(f[static_cast<std::size_t>(w)] & ~acc[static_cast<std::size_t>(w)]);
  }
  return static_cast<double>(fresh);
}

int coverage_value(const CoverageInstance& instance, std::span<const GroundElement> set) {
  for (const auto& e : set) {
    if (e.agent < 0 || e.agent >= instance.num_agents() || e.local_id < 0 ||
        e.local_id >= static_cast<int>(instance.agent_locations[static_cast<std::size_t>(e.agent)].size())) {
      throw DomainError("coverage_value: element (" + std::to_string(e.agent) + ", " +
                        std::to_string(e.local_id) + ") is not in the ground set");
    }
  }
  int count = 0;
  for (int k = 0; k < instance.num_points(); ++k) {
    const double px = instance.points(0, k);
    const double py = instance.points(1, k);
    for (const auto& e : set) {
      const int loc = instance.agent_locations[static_cast<std::size_t>(e.agent)]
                                              [static_cast<std::size_t>(e.local_id)];
      const double d = std::hypot(px - instance.locations(0, loc), py - instance.locations(1, loc));
      if (d <= instance.radius(e.agent)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

std::vector<int> identity_permutation(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return order;
}

namespace {

void check_permutation(const std::vector<int>& order, int n) {
  if (static_cast<int>(order.size()) != n) {
    throw DomainError("permutation has " + std::to_string(order.size()) + " entries, expected " +
                      std::to_string(n));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int a : order) {
    if (a < 0 || a >= n || seen[static_cast<std::size_t>(a)]) {
      throw DomainError("permutation is not a bijection on " + std::to_string(n) + " agents");
    }
    seen[static_cast<std::size_t>(a)] = true;
  }
}

}  // namespace

std::vector<int> parse_permutation(std::string_view text, int n) {
  std::vector<int> order;
  const bool letters = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
  });
  if (letters) {
    for (char c : text) order.push_back(std::toupper(static_cast<unsigned char>(c)) - 'A');
  } else {
    std::string token;
    std::istringstream in{std::string(text)};
    while (std::getline(in, token, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        order.push_back(v - 1);
      } catch (const std::exception&) {
        throw DomainError("permutation: cannot parse '" + std::string(text) + "'");
      }
    }
  }
  check_permutation(order, n);
  return order;
}

std::string permutation_label(const std::vector<int>& order) {
  std::string out;
  if (order.size() <= 26) {
    for (int a : order) out.push_back(static_cast<char>('A' + a));
    return out;
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k) out.push_back('-');
    out += std::to_string(order[k] + 1);
  }
  return out;
}

std::vector<int> inverse_permutation(const std::vector<int>& order) {
  check_permutation(order, static_cast<int>(order.size()));
  std::vector<int> inv(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inv[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  return inv;
}

CoverageInstance apply_permutation(const CoverageInstance& instance, const std::vector<int>& order) {
  check_permutation(order, instance.num_agents());
  CoverageInstance out;
  out.seed = instance.seed;
  out.points = instance.points;
  out.locations = instance.locations;
  for (int a : order) {
    out.agent_locations.push_back(instance.agent_locations[static_cast<std::size_t>(a)]);
    out.radii.push_back(instance.radii[static_cast<std::size_t>(a)]);
    out.kappas.push_back(instance.kappas[static_cast<std::size_t>(a)]);
  }
  return out;
}

std::vector<double> default_agent_probs(int n, std::uint64_t seed, double lo, double hi) {
  Rng rng(substream_seed(seed, 0x70726f6273ULL));  // "probs"
  std::vector<double> p(static_cast<std::size_t>(n));
  for (auto& v : p) v = rng.uniform(lo, hi);
  return p;
}

ChainSpec chain_for_order(const std::vector<double>& agent_probs, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  check_permutation(order, n);
  if (static_cast<int>(agent_probs.size()) != n) {
    throw StructuralError("chain_for_order: " + std::to_string(agent_probs.size()) +
                          " agent probabilities for " + std::to_string(n) + " agents");
  }
  ChainSpec::Vector p(std::max(n - 1, 0));
  for (int k = 0; k + 1 < n; ++k) p[k] = agent_probs[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
  return ChainSpec(n, std::move(p));
}

OptimumEstimate reference_optimum(const CoverageInstance& instance, int restarts,
                                  std::uint64_t seed) {
  const auto matroid = instance.matroid();
  if (count_independent_sets(matroid) <= kExactOptimumCap) {
    CoverageOracle oracle(instance);
    return {brute_force_optimum(oracle, matroid, kExactOptimumCap).value, true};
  }
  double best = sequential_greedy(CoverageOracle(instance), matroid).value;
  Rng rng(substream_seed(seed, 0x726573ULL));  // "res"
  const int n = instance.num_agents();
  for (int r = 0; r < restarts; ++r) {
    auto order = identity_permutation(n);
    for (int k = n - 1; k > 0; --k) {
      std::swap(order[static_cast<std::size_t>(k)],
                order[rng.below(static_cast<std::uint64_t>(k + 1))]);
    }
    const auto permuted = apply_permutation(instance, order);
    best = std::max(best, sequential_greedy(CoverageOracle(permuted), permuted.matroid()).value);
  }
  return {best, false};
}

OutcomeMask sample_mask(const ChainSpec& chain, std::uint64_t seed, std::uint64_t iteration) {
  Rng rng(substream_seed(seed, iteration));
  OutcomeMask mask = OutcomeMask::uniform(chain.num_edges(), false);
  for (int e = 0; e < chain.num_edges(); ++e) mask.set(e, rng.bernoulli(chain.effective_prob(e)));
  return mask;
}

MonteCarloReport monte_carlo(const CoverageInstance& instance, const ChainSpec& chain,
                             const std::vector<int>& order, int iterations, std::uint64_t seed,
                             double optimum_value) {
  if (iterations < 1) throw DomainError("monte_carlo: iterations must be >= 1");
  if (chain.num_agents() != instance.num_agents()) {
    throw StructuralError("monte_carlo: chain has " + std::to_string(chain.num_agents()) +
                          " agents, instance has " + std::to_string(instance.num_agents()));
  }
  const auto permuted = apply_permutation(instance, order);
  const CoverageOracle oracle(permuted);
  const auto matroid = permuted.matroid();

  // f is an integer count, so integer accumulators keep the sums exact.
  std::int64_t sum = 0;
  long double sum_sq = 0;
  for (int t = 0; t < iterations; ++t) {
    const auto mask = sample_mask(chain, seed, static_cast<std::uint64_t>(t));
    const auto v = static_cast<std::int64_t>(decentralized_greedy(oracle, matroid, mask).value);
    sum += v;
    sum_sq += static_cast<long double>(v) * static_cast<long double>(v);
  }

  MonteCarloReport report;
  report.iterations = iterations;
  report.seed = seed;
  report.mean_value = static_cast<double>(sum) / iterations;
  if (iterations > 1) {
    const long double mean = static_cast<long double>(sum) / iterations;
    const long double var = (sum_sq - iterations * mean * mean) / (iterations - 1);
    report.std_dev = static_cast<double>(std::sqrt(std::max<long double>(var, 0)));
  }
  report.std_error = report.std_dev / std::sqrt(static_cast<double>(iterations));
  report.optimum_value = optimum_value;
  report.empirical_gap = optimum_value > 0.0 ? report.mean_value / optimum_value : 1.0;
  report.alpha_p = alpha_p(chain);
  return report;
}

}  // namespace probgreedy
