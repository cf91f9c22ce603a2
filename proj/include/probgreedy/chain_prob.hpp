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

#ifndef PROBGREEDY_CHAIN_PROB_HPP_
#define PROBGREEDY_CHAIN_PROB_HPP_

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "probgreedy/errors.hpp"
#include "probgreedy/outcome_mask.hpp"

namespace probgreedy {

// Which computation produced a clique-number distribution.
enum class Engine {
  kDp,         // run-length dynamic program, O(n^2) for the full pmf
  kPaper,      // closed-form sum over generative-sequence families
  kEnumerate,  // every one of the 2^(n-1) outcome masks
};

inline std::string_view engine_name(Engine e) {
  switch (e) {
    case Engine::kDp: return "dp";
    case Engine::kPaper: return "paper";
    case Engine::kEnumerate: return "enumerate";
  }
  return "?";
}

inline Engine parse_engine(std::string_view name) {
  if (name == "dp") return Engine::kDp;
  if (name == "paper") return Engine::kPaper;
  if (name == "enumerate") return Engine::kEnumerate;
  throw DomainError("unknown engine '" + std::string(name) + "' (expected dp|paper|enumerate)");
}

inline constexpr int kDefaultEnumerationCap = 24;  // edges

// 1 - (1 - p0)^T: delivery probability when the sender may try T times.
template <typename Scalar>
Scalar effective_edge_prob(Scalar p0, int trials) {
  using std::isnan;
  if (isnan(p0) || p0 < Scalar(0) || p0 > Scalar(1)) {
    throw DomainError("effective_edge_prob: probability outside [0, 1]");
  }
  if (trials < 1) throw DomainError("effective_edge_prob: trial count must be >= 1");
  Scalar miss(1);
  for (int t = 0; t < trials; ++t) miss *= Scalar(1) - p0;
  return Scalar(1) - miss;
}

// Communication chain of n agents; edge e (zero-based) links position e to
// e + 1 with single-shot success probability base_probs[e] and trials[e]
// attempts.
template <typename Scalar>
class BasicChainSpec {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicChainSpec(int n, Vector base_probs, Eigen::VectorXi trials)
      : n_(n), base_probs_(std::move(base_probs)), trials_(std::move(trials)) {
    if (n_ < 1) throw DomainError("ChainSpec: agent count must be >= 1");
    if (base_probs_.size() != n_ - 1 || trials_.size() != n_ - 1) {
      throw StructuralError("ChainSpec: " + std::to_string(n_) + " agents need " +
                            std::to_string(n_ - 1) + " edge probabilities and trial counts, got " +
                            std::to_string(base_probs_.size()) + " and " +
                            std::to_string(trials_.size()));
    }
    for (Eigen::Index e = 0; e < base_probs_.size(); ++e) {
      using std::isnan;
      if (isnan(base_probs_[e]) || base_probs_[e] < Scalar(0) || base_probs_[e] > Scalar(1)) {
        throw DomainError("ChainSpec: probability of edge " + std::to_string(e) +
                          " outside [0, 1]");
      }
      if (trials_[e] < 1) {
        throw DomainError("ChainSpec: trial count of edge " + std::to_string(e) + " must be >= 1");
      }
    }
  }

  BasicChainSpec(int n, Vector base_probs)
      : BasicChainSpec(n, std::move(base_probs), Eigen::VectorXi::Ones(std::max(n - 1, 0))) {}

  static BasicChainSpec from_probs(const std::vector<Scalar>& probs) {
    Vector p(static_cast<Eigen::Index>(probs.size()));
    for (std::size_t e = 0; e < probs.size(); ++e) p[static_cast<Eigen::Index>(e)] = probs[e];
    return BasicChainSpec(static_cast<int>(probs.size()) + 1, std::move(p));
  }

  static BasicChainSpec homogeneous(int n, Scalar p) {
    return BasicChainSpec(n, Vector::Constant(std::max(n - 1, 0), p));
  }

  int num_agents() const { return n_; }
  int num_edges() const { return n_ - 1; }
  const Vector& base_probs() const { return base_probs_; }
  const Eigen::VectorXi& trials() const { return trials_; }

  Scalar effective_prob(int edge) const {
    check_edge(edge);
    return effective_edge_prob(base_probs_[edge], trials_[edge]);
  }

  Vector effective_probs() const {
    Vector q(num_edges());
    for (int e = 0; e < num_edges(); ++e) q[e] = effective_prob(e);
    return q;
  }

  BasicChainSpec with_extra_trials(int edge, int extra = 1) const {
    check_edge(edge);
    if (extra < 0) throw DomainError("ChainSpec: negative extra trials");
    BasicChainSpec out = *this;
    out.trials_[edge] += extra;
    return out;
  }

  void check_edge(int edge) const {
    if (edge < 0 || edge >= num_edges()) {
      throw DomainError("ChainSpec: edge " + std::to_string(edge) + " outside [0, " +
                        std::to_string(num_edges()) + ")");
    }
  }

 private:
  int n_;
  Vector base_probs_;
  Eigen::VectorXi trials_;
};

using ChainSpec = BasicChainSpec<double>;

// Partial edge assignment: `connected` edges forced delivered, `disconnected`
// forced failed, the rest free. Edge indices are zero-based.
struct GenerativeSequence {
  std::vector<int> connected;
  std::vector<int> disconnected;
};

// Probability of the family of outcomes consistent with g.
template <typename Scalar>
Scalar family_probability(const BasicChainSpec<Scalar>& chain, const GenerativeSequence& g) {
  for (int c : g.connected) {
    chain.check_edge(c);
    if (std::find(g.disconnected.begin(), g.disconnected.end(), c) != g.disconnected.end()) {
      throw DomainError("family_probability: edge " + std::to_string(c) +
                        " is both connected and disconnected");
    }
  }
  for (int d : g.disconnected) chain.check_edge(d);
  Scalar p(1);
  for (int c : g.connected) p *= chain.effective_prob(c);
  for (int d : g.disconnected) p *= Scalar(1) - chain.effective_prob(d);
  return p;
}

template <typename Scalar>
Scalar mask_probability(const BasicChainSpec<Scalar>& chain, const OutcomeMask& mask) {
  if (mask.size() != chain.num_edges()) {
    throw StructuralError("mask_probability: mask has " + std::to_string(mask.size()) +
                          " edges, chain has " + std::to_string(chain.num_edges()));
  }
  Scalar p(1);
  for (int e = 0; e < mask.size(); ++e) {
    const Scalar q = chain.effective_prob(e);
    p *= mask[e] ? q : Scalar(1) - q;
  }
  return p;
}

namespace detail {

template <typename Scalar>
void check_level(const BasicChainSpec<Scalar>& chain, int l, const char* who) {
  if (l < 1 || l > chain.num_agents()) {
    throw DomainError(std::string(who) + ": clique level " + std::to_string(l) + " outside [1, " +
                      std::to_string(chain.num_agents()) + "]");
  }
}

// P(longest run of delivered edges >= run) given effective probabilities q.
template <typename Scalar>
Scalar longest_run_at_least(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& q, int run) {
  if (run <= 0) return Scalar(1);
  if (run > q.size()) return Scalar(0);
  // state[k]: run not yet reached, trailing run currently k (k < run)
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> state = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(run);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> next(run);
  state[0] = Scalar(1);
  Scalar reached(0);
  for (Eigen::Index e = 0; e < q.size(); ++e) {
    const Scalar hit = q[e];
    const Scalar miss = Scalar(1) - hit;
    next.setZero();
    for (int k = 0; k < run; ++k) {
      const Scalar mass = state[k];
      next[0] += mass * miss;
      if (k + 1 < run) {
        next[k + 1] += mass * hit;
      } else {
        reached += mass * hit;
      }
    }
    state.swap(next);
  }
  return reached;
}

template <typename Scalar>
Scalar closed_form_family(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& q, int i, int run) {
  // family i (one-based): edges i..i+run-1 delivered, edge i-1 failed
  Scalar p(1);
  for (int e = i - 1; e < i - 1 + run; ++e) p *= q[e];
  if (i >= 2) p *= Scalar(1) - q[i - 2];
  return p;
}

template <typename Scalar>
Scalar closed_form_run_at_least(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& q, int run) {
  if (run <= 0) return Scalar(1);
  const int m = static_cast<int>(q.size());
  if (run > m) return Scalar(0);
  const int families = m - run + 1;
  std::vector<Scalar> fam(static_cast<std::size_t>(families) + 1, Scalar(0));
  for (int i = 1; i <= families; ++i) fam[static_cast<std::size_t>(i)] = closed_form_family(q, i, run);

  Scalar total(0);
  const int leading = std::min(run + 1, families);
  for (int i = 1; i <= leading; ++i) total += fam[static_cast<std::size_t>(i)];
  for (int i = run + 2; i <= families; ++i) {
    Scalar earlier(0);
    for (int j = 1; j <= i - run - 1; ++j) earlier += fam[static_cast<std::size_t>(j)];
    total += fam[static_cast<std::size_t>(i)] * (Scalar(1) - earlier);
  }
  return total;
}

inline int longest_run(std::uint64_t bits) {
  int best = 0;
  while (bits != 0) {
    bits &= bits << 1;
    ++best;
  }
  return best;
}

}  // namespace detail

// P(W >= l) by the exact run-length dynamic program.
template <typename Scalar>
Scalar prob_clique_at_least_dp(const BasicChainSpec<Scalar>& chain, int l) {
  detail::check_level(chain, l, "prob_clique_at_least_dp");
  return detail::longest_run_at_least<Scalar>(chain.effective_probs(), l - 1);
}

// P(W >= l) by the closed-form family sum. Families sharing no edge are
// treated as independent, so this is not exact on long chains; see the
// audit report for its deviation from the dynamic program.
template <typename Scalar>
Scalar prob_clique_at_least_paper(const BasicChainSpec<Scalar>& chain, int l) {
  detail::check_level(chain, l, "prob_clique_at_least_paper");
  return detail::closed_form_run_at_least<Scalar>(chain.effective_probs(), l - 1);
}

template <typename Scalar>
struct BasicCliqueDistribution {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector pmf;  // pmf[l - 1] = P(W = l), l = 1..n
  Engine engine = Engine::kDp;

  int num_agents() const { return static_cast<int>(pmf.size()); }
  Scalar at(int l) const { return pmf[l - 1]; }
  Scalar at_least(int l) const {
    if (l > num_agents()) return Scalar(0);
    return pmf.tail(num_agents() - l + 1).sum();
  }
};

using CliqueDistribution = BasicCliqueDistribution<double>;

// Ground truth: accumulates every outcome mask into the pmf. Masks are
// visited in increasing binary order, so the result is bitwise reproducible.
template <typename Scalar>
BasicCliqueDistribution<Scalar> enumerate_outcomes(const BasicChainSpec<Scalar>& chain,
                                                   int cap_edges = kDefaultEnumerationCap) {
  const int m = chain.num_edges();
  if (m > cap_edges || m > 62) {
    throw CapExceeded("enumerate_outcomes: 2^" + std::to_string(m) + " outcome masks",
                      std::ldexp(1.0, m), std::ldexp(1.0, std::min(cap_edges, 62)));
  }
  const auto q = chain.effective_probs();
  BasicCliqueDistribution<Scalar> dist;
  dist.engine = Engine::kEnumerate;
  dist.pmf = BasicCliqueDistribution<Scalar>::Vector::Zero(chain.num_agents());
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    Scalar p(1);
    for (int e = 0; e < m; ++e) p *= ((bits >> e) & 1u) ? q[e] : Scalar(1) - q[e];
    dist.pmf[detail::longest_run(bits)] += p;
  }
  return dist;
}

// pmf[l] = P(W >= l) - P(W >= l + 1) with the selected engine.
template <typename Scalar>
BasicCliqueDistribution<Scalar> clique_distribution(const BasicChainSpec<Scalar>& chain,
                                                    Engine engine = Engine::kDp,
                                                    int cap_edges = kDefaultEnumerationCap) {
  if (engine == Engine::kEnumerate) return enumerate_outcomes(chain, cap_edges);

  const int n = chain.num_agents();
  const auto q = chain.effective_probs();
  typename BasicCliqueDistribution<Scalar>::Vector tail(n + 1);
  for (int l = 1; l <= n; ++l) {
    tail[l - 1] = engine == Engine::kDp ? detail::longest_run_at_least<Scalar>(q, l - 1)
                                        : detail::closed_form_run_at_least<Scalar>(q, l - 1);
  }
  tail[n] = Scalar(0);

  BasicCliqueDistribution<Scalar> dist;
  dist.engine = engine;
  dist.pmf = tail.head(n) - tail.tail(n);
  if (engine == Engine::kDp) {
    // rounding can leave -1e-17 where two tails coincide
    dist.pmf = dist.pmf.cwiseMax(Scalar(0));
  }
  return dist;
}

// Weight of clique number l in the expected gap: 1 / (2 + n - l).
template <typename Scalar>
typename BasicCliqueDistribution<Scalar>::Vector gap_weights(int n) {
  typename BasicCliqueDistribution<Scalar>::Vector w(n);
  for (int l = 1; l <= n; ++l) w[l - 1] = Scalar(1) / Scalar(2 + n - l);
  return w;
}

template <typename Scalar>
Scalar alpha_p(const BasicCliqueDistribution<Scalar>& dist) {
  return dist.pmf.dot(gap_weights<Scalar>(dist.num_agents()));
}

// Probabilistic optimality gap: E[f(S)] >= alpha_p * f(S*).
template <typename Scalar>
Scalar alpha_p(const BasicChainSpec<Scalar>& chain, Engine engine = Engine::kDp,
               int cap_edges = kDefaultEnumerationCap) {
  return alpha_p(clique_distribution(chain, engine, cap_edges));
}

}  // namespace probgreedy

#endif  // PROBGREEDY_CHAIN_PROB_HPP_
