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

#include "probgreedy/chain_prob.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace probgreedy {
namespace {

// Independent reference: walks all 2^(n-1) outcomes with its own run-length
// bookkeeping, sharing no code with the library engines.
std::vector<double> BruteForcePmf(const std::vector<double>& q) {
  const int m = static_cast<int>(q.size());
  std::vector<double> pmf(static_cast<std::size_t>(m + 1), 0.0);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    double p = 1.0;
    int run = 0;
    int longest = 0;
    for (int e = 0; e < m; ++e) {
      const bool ok = (bits >> e) & 1u;
      p *= ok ? q[static_cast<std::size_t>(e)] : 1.0 - q[static_cast<std::size_t>(e)];
      run = ok ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    pmf[static_cast<std::size_t>(longest)] += p;
  }
  return pmf;
}

ChainSpec RandomChain(std::mt19937_64& rng, int n, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> p(static_cast<std::size_t>(n - 1));
  for (auto& v : p) v = u(rng);
  return ChainSpec::from_probs(p);
}

TEST(EffectiveEdgeProbTest, Examples) {
  EXPECT_DOUBLE_EQ(effective_edge_prob(0.5, 2), 0.75);
  EXPECT_EQ(effective_edge_prob(1.0, 1), 1.0);
  EXPECT_EQ(effective_edge_prob(1.0, 7), 1.0);
  EXPECT_NEAR(effective_edge_prob(0.3, 3), 0.657, 1e-15);
}

TEST(EffectiveEdgeProbTest, DomainErrors) {
  EXPECT_THROW(effective_edge_prob(-0.1, 1), DomainError);
  EXPECT_THROW(effective_edge_prob(1.1, 1), DomainError);
  EXPECT_THROW(effective_edge_prob(std::nan(""), 1), DomainError);
  EXPECT_THROW(effective_edge_prob(0.5, 0), DomainError);
}

TEST(EffectiveEdgeProbTest, NondecreasingInTrials) {
  for (double p : {0.0, 0.01, 0.3, 0.77, 1.0}) {
    double prev = 0.0;
    for (int t = 1; t <= 40; ++t) {
      const double q = effective_edge_prob(p, t);
      EXPECT_GE(q, prev);
      EXPECT_LE(q, 1.0);
      prev = q;
    }
  }
}

TEST(ChainSpecTest, ValidatesShape) {
  EXPECT_THROW(ChainSpec(3, ChainSpec::Vector::Constant(1, 0.5)), StructuralError);
  EXPECT_THROW(ChainSpec(0, ChainSpec::Vector()), DomainError);
  EXPECT_THROW(ChainSpec::from_probs({0.5, 1.5}), DomainError);
  EXPECT_THROW(ChainSpec(2, ChainSpec::Vector::Constant(1, 0.5), Eigen::VectorXi::Zero(1)),
               DomainError);
}

TEST(FamilyProbabilityTest, Examples) {
  const auto chain = ChainSpec::from_probs({0.9, 0.8, 0.5});
  EXPECT_NEAR(family_probability(chain, {{0, 1}, {2}}), 0.36, 1e-15);
  EXPECT_EQ(family_probability(chain, {}), 1.0);

  Eigen::VectorXi trials(1);
  trials << 2;
  const ChainSpec doubled(2, ChainSpec::Vector::Constant(1, 0.5), trials);
  EXPECT_DOUBLE_EQ(family_probability(doubled, {{0}, {}}), 0.75);
  EXPECT_DOUBLE_EQ(family_probability(doubled, {{}, {0}}), 0.25);
}

TEST(FamilyProbabilityTest, Errors) {
  const auto chain = ChainSpec::from_probs({0.9, 0.8});
  EXPECT_THROW(family_probability(chain, {{2}, {}}), DomainError);
  EXPECT_THROW(family_probability(chain, {{}, {-1}}), DomainError);
  EXPECT_THROW(family_probability(chain, {{1}, {1}}), DomainError);
}

TEST(CliqueAtLeastTest, DynamicProgramExamples) {
  const auto chain = ChainSpec::from_probs({0.5, 0.5});
  EXPECT_EQ(prob_clique_at_least_dp(chain, 1), 1.0);
  EXPECT_DOUBLE_EQ(prob_clique_at_least_dp(chain, 3), 0.25);
  EXPECT_DOUBLE_EQ(prob_clique_at_least_dp(chain, 2), 0.75);
  EXPECT_THROW(prob_clique_at_least_dp(chain, 0), DomainError);
  EXPECT_THROW(prob_clique_at_least_dp(chain, 4), DomainError);
}

TEST(CliqueAtLeastTest, ClosedFormExamples) {
  const auto chain = ChainSpec::from_probs({0.5, 0.5});
  EXPECT_DOUBLE_EQ(prob_clique_at_least_paper(chain, 3), 0.25);
  EXPECT_EQ(prob_clique_at_least_paper(chain, 1), 1.0);

  const auto mixed = ChainSpec::from_probs({0.9, 0.6, 0.3, 0.7});
  EXPECT_NEAR(prob_clique_at_least_paper(mixed, 5), 0.9 * 0.6 * 0.3 * 0.7, 1e-15);

  const auto certain = ChainSpec::homogeneous(7, 1.0);
  for (int l = 1; l <= 7; ++l) EXPECT_EQ(prob_clique_at_least_paper(certain, l), 1.0);
  EXPECT_THROW(prob_clique_at_least_paper(chain, 0), DomainError);
}

TEST(CliqueAtLeastTest, NonincreasingInLevel) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto chain = RandomChain(rng, 2 + static_cast<int>(rng() % 20));
    double prev = 1.0;
    for (int l = 1; l <= chain.num_agents(); ++l) {
      const double v = prob_clique_at_least_dp(chain, l);
      EXPECT_LE(v, prev + 1e-15);
      prev = v;
    }
  }
}

// The family sum drops the overlap between non-adjacent families, which only
// matters once three families fit with gaps: n >= 3 (l - 1) + 3.
TEST(CliqueAtLeastTest, ClosedFormExactOnShortChains) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 15);
    const auto chain = RandomChain(rng, n);
    for (int l = 2; l <= n; ++l) {
      if (n > 3 * (l - 1) + 2) continue;
      EXPECT_NEAR(prob_clique_at_least_paper(chain, l), prob_clique_at_least_dp(chain, l), 1e-12)
          << "n=" << n << " l=" << l;
    }
  }
  const auto chain = ChainSpec::homogeneous(6, 0.5);
  EXPECT_GT(std::abs(prob_clique_at_least_paper(chain, 2) - prob_clique_at_least_dp(chain, 2)),
            1e-6);
}

TEST(CliqueDistributionTest, Examples) {
  const auto chain = ChainSpec::from_probs({0.5, 0.5});
  for (Engine e : {Engine::kDp, Engine::kPaper, Engine::kEnumerate}) {
    const auto d = clique_distribution(chain, e);
    EXPECT_EQ(d.engine, e);
    EXPECT_NEAR(d.at(1), 0.25, 1e-15);
    EXPECT_NEAR(d.at(2), 0.5, 1e-15);
    EXPECT_NEAR(d.at(3), 0.25, 1e-15);
  }
  const auto zero = clique_distribution(ChainSpec::homogeneous(6, 0.0));
  EXPECT_EQ(zero.at(1), 1.0);
  EXPECT_EQ(zero.pmf.tail(5).sum(), 0.0);
  const auto one = clique_distribution(ChainSpec::homogeneous(6, 1.0));
  EXPECT_EQ(one.at(6), 1.0);
  EXPECT_EQ(one.pmf.head(5).sum(), 0.0);
}

TEST(EnumerateOutcomesTest, Examples) {
  const auto two = enumerate_outcomes(ChainSpec::from_probs({0.3}));
  EXPECT_DOUBLE_EQ(two.at(1), 0.7);
  EXPECT_DOUBLE_EQ(two.at(2), 0.3);
  const auto three = enumerate_outcomes(ChainSpec::from_probs({0.5, 0.5}));
  EXPECT_DOUBLE_EQ(three.at(2), 0.5);
  const auto five = enumerate_outcomes(ChainSpec::homogeneous(5, 1.0));
  EXPECT_EQ(five.at(5), 1.0);
}

TEST(EnumerateOutcomesTest, RefusesAboveCap) {
  const auto chain = ChainSpec::homogeneous(26, 0.5);
  EXPECT_THROW(enumerate_outcomes(chain), CapExceeded);
  EXPECT_THROW(clique_distribution(chain, Engine::kEnumerate), CapExceeded);
  EXPECT_THROW(enumerate_outcomes(ChainSpec::homogeneous(6, 0.5), 4), CapExceeded);
}

TEST(AlphaPTest, Examples) {
  EXPECT_EQ(alpha_p(ChainSpec::homogeneous(5, 1.0)), 0.5);
  EXPECT_EQ(alpha_p(ChainSpec::homogeneous(5, 0.0)), 1.0 / 6.0);
  EXPECT_NEAR(alpha_p(ChainSpec::from_probs({0.5, 0.5})), 0.25 / 4 + 0.5 / 3 + 0.25 / 2, 1e-15);
  EXPECT_NEAR(alpha_p(ChainSpec::from_probs({0.5, 0.5}), Engine::kEnumerate), 0.35416666666666663,
              1e-15);
}

TEST(ChainPropertyTest, EnginesAgreeWithBruteForce) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 16);
    const auto chain = RandomChain(rng, n);
    const auto q = chain.effective_probs();
    const auto ref = BruteForcePmf(std::vector<double>(q.data(), q.data() + q.size()));
    const auto dp = clique_distribution(chain, Engine::kDp);
    const auto en = clique_distribution(chain, Engine::kEnumerate);
    for (int l = 1; l <= n; ++l) {
      EXPECT_NEAR(dp.at(l), ref[static_cast<std::size_t>(l - 1)], 1e-12);
      EXPECT_NEAR(en.at(l), ref[static_cast<std::size_t>(l - 1)], 1e-12);
      EXPECT_GE(dp.at(l), 0.0);
      EXPECT_LE(dp.at(l), 1.0);
      // complementarity against the tail computed directly
      EXPECT_NEAR(dp.at_least(l), prob_clique_at_least_dp(chain, l), 1e-12);
    }
    EXPECT_NEAR(dp.pmf.sum(), 1.0, 1e-12);
    EXPECT_NEAR(en.pmf.sum(), 1.0, 1e-12);
    EXPECT_NEAR(alpha_p(dp), alpha_p(en), 1e-12);
  }
}

TEST(ChainPropertyTest, TailIdentitiesAndBounds) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const auto chain = RandomChain(rng, n);
    const auto q = chain.effective_probs();
    const auto d = clique_distribution(chain);
    EXPECT_NEAR(d.at(n), q.prod(), 1e-12);
    EXPECT_NEAR(d.at(1), (ChainSpec::Vector::Ones(n - 1) - q).prod(), 1e-12);
    const double a = alpha_p(d);
    EXPECT_GE(a, 1.0 / (n + 1) - 1e-15);
    EXPECT_LE(a, 0.5 + 1e-15);
  }
}

TEST(ChainPropertyTest, RaisingAnyEdgeNeverLowersAlpha) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    auto probs = RandomChain(rng, n).base_probs();
    const double base = alpha_p(ChainSpec(n, probs));
    for (int e = 0; e < n - 1; ++e) {
      auto raised = probs;
      raised[e] = probs[e] + (1.0 - probs[e]) * u(rng);
      EXPECT_GE(alpha_p(ChainSpec(n, raised)), base - 1e-15);
    }
  }
}

TEST(ChainPropertyTest, ExtendedPrecisionAgrees) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 60);
    const auto chain = RandomChain(rng, n);
    const BasicChainSpec<long double> wide(n, chain.base_probs().cast<long double>(),
                                           chain.trials());
    EXPECT_NEAR(static_cast<double>(alpha_p(wide)), alpha_p(chain), 1e-13);
  }
}

TEST(ChainPropertyTest, BoundaryExactness) {
  for (int n = 2; n <= 50; ++n) {
    EXPECT_EQ(alpha_p(ChainSpec::homogeneous(n, 1.0)), 0.5) << n;
    EXPECT_EQ(alpha_p(ChainSpec::homogeneous(n, 0.0)), 1.0 / (n + 1)) << n;
  }
}

TEST(MaskProbabilityTest, MasksPartitionTheSampleSpace) {
  std::mt19937_64 rng(12);
  const auto chain = RandomChain(rng, 9);
  double total = 0.0;
  for (std::uint64_t bits = 0; bits < 256; ++bits) {
    total += mask_probability(chain, OutcomeMask::from_bits(bits, 8));
  }
  EXPECT_NEAR(total, 1.0, 1e-14);
  EXPECT_THROW(mask_probability(chain, OutcomeMask::parse("10")), StructuralError);
}

TEST(EngineNameTest, RoundTrip) {
  for (Engine e : {Engine::kDp, Engine::kPaper, Engine::kEnumerate}) {
    EXPECT_EQ(parse_engine(engine_name(e)), e);
  }
  EXPECT_THROW(parse_engine("fast"), DomainError);
}

}  // namespace
}  // namespace probgreedy
