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

#include "probgreedy/report.hpp"

#include <cstdio>
#include <sstream>

#include "probgreedy/reinforce.hpp"

namespace probgreedy {

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string pad(const std::string& s, int width) {
  if (static_cast<int>(s.size()) >= width) return s + " ";
  return std::string(static_cast<std::size_t>(width) - s.size(), ' ') + s + " ";
}

std::string schema_line(const char* command) {
  return std::string("# probgreedy ") + command + " v" + std::to_string(kCsvSchemaVersion) + "\n";
}

void check_cap(const ChainSpec& chain, int cap) {
  if (chain.num_edges() > cap) {
    throw CapExceeded("enumeration over 2^" + std::to_string(chain.num_edges()) + " outcome masks",
                      std::ldexp(1.0, chain.num_edges()), std::ldexp(1.0, cap));
  }
}

void describe_chain(std::ostringstream& out, const ChainSpec& chain) {
  out << "chain: " << chain.num_agents() << " agents, " << chain.num_edges() << " edges\n";
  out << pad("edge", 6) << pad("p0", 10) << pad("trials", 7) << pad("q", 10) << "\n";
  for (int e = 0; e < chain.num_edges(); ++e) {
    out << pad(std::to_string(e + 1), 6) << pad(fmt6(chain.base_probs()[e]), 10)
        << pad(std::to_string(chain.trials()[e]), 7) << pad(fmt6(chain.effective_prob(e)), 10)
        << "\n";
  }
}

}  // namespace

Report cmd_alpha(const ExperimentConfig& config) {
  const ChainSpec chain = build_chain(config);
  const int n = chain.num_agents();
  if (config.engine == Engine::kEnumerate) check_cap(chain, config.cap);
  const bool have_enum = chain.num_edges() <= config.cap;

  const CliqueDistribution dp = clique_distribution(chain, Engine::kDp);
  const CliqueDistribution paper = clique_distribution(chain, Engine::kPaper);
  CliqueDistribution en;
  if (have_enum) en = enumerate_outcomes(chain, config.cap);
  const auto weights = gap_weights<double>(n);

  const double a_dp = alpha_p(dp);
  const double a_paper = alpha_p(paper);
  const double a_en = have_enum ? alpha_p(en) : 0.0;

  std::ostringstream text;
  describe_chain(text, chain);
  text << "\nclique-number distribution P(W = l)\n";
  text << pad("l", 5) << pad("weight", 10) << pad("dp", 13) << pad("paper", 13)
       << pad("enumerate", 13) << "\n";
  for (int l = 1; l <= n; ++l) {
    text << pad(std::to_string(l), 5) << pad(fmt6(weights[l - 1]), 10) << pad(fmt6(dp.at(l)), 13)
         << pad(fmt6(paper.at(l)), 13) << pad(have_enum ? fmt6(en.at(l)) : "n/a", 13) << "\n";
  }
  text << pad("sum", 5) << pad("", 10) << pad(fmt6(dp.pmf.sum()), 13)
       << pad(fmt6(paper.pmf.sum()), 13) << pad(have_enum ? fmt6(en.pmf.sum()) : "n/a", 13)
       << "\n\n";

  text << pad("engine", 10) << pad("alpha_p", 13) << pad("max|dpmf| vs dp", 16)
       << pad("|dalpha| vs dp", 15) << "\n";
  auto engine_row = [&](const char* name, const CliqueDistribution* d, double a) {
    if (!d) {
      text << pad(name, 10) << pad("n/a (cap)", 13) << pad("n/a", 16) << pad("n/a", 15) << "\n";
      return;
    }
    const double dev = (d->pmf - dp.pmf).cwiseAbs().maxCoeff();
    text << pad(name, 10) << pad(fmt6(a), 13) << pad(fmt6(dev), 16) << pad(fmt6(std::abs(a - a_dp)), 15)
         << "\n";
  };
  engine_row("dp", &dp, a_dp);
  engine_row("paper", &paper, a_paper);
  engine_row("enumerate", have_enum ? &en : nullptr, a_en);

  const double selected = config.engine == Engine::kDp      ? a_dp
                          : config.engine == Engine::kPaper ? a_paper
                                                            : a_en;
  text << "\nselected engine: " << engine_name(config.engine) << "\n";
  text << "alpha_p = " << fmt6(selected) << "\n";

  std::ostringstream csv;
  csv << schema_line("alpha");
  csv << "row,l,weight,dp,paper,enumerate\n";
  for (int l = 1; l <= n; ++l) {
    csv << "pmf," << l << "," << fmt17(weights[l - 1]) << "," << fmt17(dp.at(l)) << ","
        << fmt17(paper.at(l)) << "," << (have_enum ? fmt17(en.at(l)) : "") << "\n";
  }
  csv << "alpha,,," << fmt17(a_dp) << "," << fmt17(a_paper) << ","
      << (have_enum ? fmt17(a_en) : "") << "\n";
  return {text.str(), csv.str()};
}

Report cmd_reinforce(const ExperimentConfig& config) {
  const ChainSpec chain = build_chain(config);
  if (chain.num_agents() < 2) throw ConfigError("chain.n", "reinforcement needs at least 2 agents");
  if (config.engine == Engine::kEnumerate) check_cap(chain, config.cap);

  const SweepReport sweep = sweep_single_reinforcement(chain, config.engine);
  std::ostringstream text;
  describe_chain(text, chain);
  text << "\nengine: " << engine_name(config.engine) << "\n";
  text << "baseline alpha_p: " << fmt6(sweep.baseline_alpha) << "\n\n";
  text << "alpha_p with one extra trial on edge e\n";
  text << pad("edge", 8);
  for (int e = 0; e < chain.num_edges(); ++e) text << pad(std::to_string(e + 1), 10);
  text << "\n" << pad("alpha_p", 8);
  for (int e = 0; e < chain.num_edges(); ++e) {
    std::string cell = fmt6(sweep.per_edge_alpha[static_cast<std::size_t>(e)]);
    if (e == sweep.best_edge) cell += "*";
    text << pad(cell, 10);
  }
  text << "\nbest edge: " << sweep.best_edge + 1 << " (position " << sweep.best_edge + 1 << " -> "
       << sweep.best_edge + 2 << "), alpha_p' = " << fmt6(sweep.best_alpha) << "\n";

  std::ostringstream csv;
  csv << schema_line("reinforce");
  csv << "section,index,edge,alpha,best\n";
  csv << "baseline,0,," << fmt17(sweep.baseline_alpha) << ",\n";
  for (int e = 0; e < chain.num_edges(); ++e) {
    csv << "sweep," << e + 1 << "," << e + 1 << ","
        << fmt17(sweep.per_edge_alpha[static_cast<std::size_t>(e)]) << ","
        << (e == sweep.best_edge ? 1 : 0) << "\n";
  }

  if (config.budget > 0) {
    const ReinforcementPlan plan = greedy_multi_reinforcement(chain, config.budget, config.engine);
    text << "\ngreedy allocation, budget " << config.budget << "\n";
    for (std::size_t r = 0; r < plan.rounds.size(); ++r) {
      text << "round " << r + 1 << ": edge " << plan.rounds[r].edge + 1 << " -> alpha_p "
           << fmt6(plan.rounds[r].alpha) << "\n";
      csv << "greedy," << r + 1 << "," << plan.rounds[r].edge + 1 << ","
          << fmt17(plan.rounds[r].alpha) << ",\n";
    }
    text << "extra trials per edge:";
    for (int t : plan.extra_trials) text << " " << t;
    text << "\nfinal alpha_p: " << fmt6(plan.final_alpha) << "\n";
  }
  return {text.str(), csv.str()};
}

Report cmd_simulate(const ExperimentConfig& config) {
  const CoverageInstance instance = build_instance(config);
  const int n = instance.num_agents();
  if (n < 2) throw ConfigError("instance", "simulation needs at least 2 agents");
  if (config.chain && config.chain->n != n) {
    throw ConfigError("chain.n", "chain has " + std::to_string(config.chain->n) +
                                     " agents, instance has " + std::to_string(n));
  }
  std::vector<std::vector<int>> orders;
  if (config.permutations.empty()) {
    orders.push_back(identity_permutation(n));
  } else {
    for (std::size_t k = 0; k < config.permutations.size(); ++k) {
      try {
        orders.push_back(parse_permutation(config.permutations[k], n));
      } catch (const DomainError& e) {
        throw ConfigError("permutations[" + std::to_string(k) + "]", e.what());
      }
    }
  }
  const std::vector<double> agent_probs =
      config.chain ? std::vector<double>{} : default_agent_probs(n, instance.seed);
  const OptimumEstimate optimum = reference_optimum(instance, config.restarts, config.seed);

  std::ostringstream text;
  text << "instance: " << n << " agents, " << instance.locations.cols() << " locations, "
       << instance.num_points() << " points, seed " << instance.seed << "\n";
  text << (optimum.exact ? "optimum (exact): " : "optimum (best known): ") << fmt6(optimum.value)
       << "\n";
  text << "iterations: " << config.iterations << ", seed: " << config.seed << "\n\n";
  text << pad("sequence", 10) << pad("f", 10) << pad("alpha_p", 10) << pad("a*", 4)
       << pad("e*", 4) << pad("f'", 10) << pad("alpha_p'", 10) << pad("se(f)", 9)
       << pad("se(f')", 9) << pad("f/opt", 9) << "\n";

  std::ostringstream csv;
  csv << schema_line("simulate");
  csv << "sequence,iterations,seed,mean_f,std_error,alpha_p,a_star,e_star,mean_f_reinforced,"
         "std_error_reinforced,alpha_p_reinforced,optimum,optimum_exact,empirical_gap,"
         "empirical_gap_reinforced\n";

  for (const auto& order : orders) {
    const ChainSpec chain =
        config.chain ? build_chain(config, order) : chain_for_order(agent_probs, order);
    if (config.engine == Engine::kEnumerate) check_cap(chain, config.cap);
    const MonteCarloReport base =
        monte_carlo(instance, chain, order, config.iterations, config.seed, optimum.value);
    const SweepReport sweep = sweep_single_reinforcement(chain, config.engine);
    const ChainSpec boosted = chain.with_extra_trials(sweep.best_edge, 1);
    const MonteCarloReport lifted =
        monte_carlo(instance, boosted, order, config.iterations, config.seed, optimum.value);
    const double a = alpha_p(chain, config.engine, config.cap);
    const double a2 = alpha_p(boosted, config.engine, config.cap);
    const std::string label = permutation_label(order);
    const std::string agent = permutation_label({order[static_cast<std::size_t>(sweep.best_edge)]});

    text << pad(label, 10) << pad(fmt6(base.mean_value), 10) << pad(fmt6(a), 10) << pad(agent, 4)
         << pad(std::to_string(sweep.best_edge + 1), 4) << pad(fmt6(lifted.mean_value), 10)
         << pad(fmt6(a2), 10) << pad(fmt6(base.std_error), 9) << pad(fmt6(lifted.std_error), 9)
         << pad(fmt6(base.empirical_gap), 9) << "\n";
    csv << label << "," << config.iterations << "," << config.seed << "," << fmt17(base.mean_value)
        << "," << fmt17(base.std_error) << "," << fmt17(a) << "," << agent << ","
        << sweep.best_edge + 1 << "," << fmt17(lifted.mean_value) << ","
        << fmt17(lifted.std_error) << "," << fmt17(a2) << "," << fmt17(optimum.value) << ","
        << (optimum.exact ? 1 : 0) << "," << fmt17(base.empirical_gap) << ","
        << fmt17(lifted.empirical_gap) << "\n";
  }
  return {text.str(), csv.str()};
}

Report cmd_enumerate(const ExperimentConfig& config) {
  const ChainSpec chain = build_chain(config);
  check_cap(chain, config.cap);
  const int m = chain.num_edges();
  const auto q = chain.effective_probs();

  std::ostringstream text;
  std::ostringstream csv;
  describe_chain(text, chain);
  text << "\n" << pad("mask", std::max(m, 4)) << pad("probability", 13) << pad("W", 4) << "\n";
  csv << schema_line("enumerate");
  csv << "mask,probability,clique_number\n";

  Eigen::VectorXd pmf = Eigen::VectorXd::Zero(chain.num_agents());
  double total = 0.0;
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    const OutcomeMask mask = OutcomeMask::from_bits(bits, m);
    double p = 1.0;
    for (int e = 0; e < m; ++e) p *= mask[e] ? q[e] : 1.0 - q[e];
    const int w = clique_number(mask);
    pmf[w - 1] += p;
    total += p;
    const std::string label = m == 0 ? "-" : mask.to_string();
    text << pad(label, std::max(m, 4)) << pad(fmt6(p), 13) << pad(std::to_string(w), 4) << "\n";
    csv << label << "," << fmt17(p) << "," << w << "\n";
  }
  text << pad("total", std::max(m, 4)) << pad(fmt6(total), 13) << "\n\n";
  text << "P(W = l):";
  for (int l = 1; l <= chain.num_agents(); ++l) text << " " << fmt6(pmf[l - 1]);
  text << "\n";
  csv << "total," << fmt17(total) << ",\n";
  return {text.str(), csv.str()};
}

Report cmd_solve(const ExperimentConfig& config) {
  const CoverageInstance instance = build_instance(config);
  const int n = instance.num_agents();
  std::vector<int> order = identity_permutation(n);
  if (!config.permutations.empty()) {
    try {
      order = parse_permutation(config.permutations.front(), n);
    } catch (const DomainError& e) {
      throw ConfigError("permutations[0]", e.what());
    }
  }
  const OutcomeMask mask = config.mask ? OutcomeMask::parse(*config.mask)
                                       : OutcomeMask::uniform(n - 1, true);
  if (mask.size() != n - 1) {
    throw ConfigError("mask", "has " + std::to_string(mask.size()) + " edges, instance needs " +
                                  std::to_string(n - 1));
  }
  const CoverageInstance permuted = apply_permutation(instance, order);
  const CoverageOracle oracle(permuted);
  const PartitionMatroid matroid = permuted.matroid();
  const SelectionResult central = sequential_greedy(oracle, matroid);
  const SelectionResult decentral = decentralized_greedy(oracle, matroid, mask);
  const OptimumEstimate optimum = reference_optimum(instance, config.restarts, config.seed);
  const int w = clique_number(mask);
  const double bound = deterministic_gap_bound(n, w);

  std::ostringstream text;
  std::ostringstream csv;
  csv << schema_line("solve");
  csv << "algorithm,position,agent,local_id,location,value\n";
  text << "sequence " << permutation_label(order) << ", mask " << (n > 1 ? mask.to_string() : "-")
       << ", clique number " << w << "\n\n";
  auto emit = [&](const char* name, const SelectionResult& r) {
    text << name << ": f = " << fmt6(r.value) << " (" << r.oracle_calls << " gain evaluations)\n";
    for (int k = 0; k < n; ++k) {
      const std::string agent = permutation_label({order[static_cast<std::size_t>(k)]});
      text << "  " << pad(std::to_string(k + 1), 3) << pad(agent, 3) << "locations";
      for (const auto& e : r.per_agent[static_cast<std::size_t>(k)]) {
        const int loc = permuted.agent_locations[static_cast<std::size_t>(k)]
                                                [static_cast<std::size_t>(e.local_id)];
        text << " " << loc;
        csv << name << "," << k + 1 << "," << agent << "," << e.local_id << "," << loc << ","
            << fmt17(r.value) << "\n";
      }
      text << "\n";
    }
  };
  emit("sequential", central);
  emit("decentralized", decentral);
  text << "\n" << (optimum.exact ? "optimum (exact): " : "optimum (best known): ")
       << fmt6(optimum.value) << "\n";
  text << "guaranteed ratio 1/(2+n-W) = " << fmt6(bound) << ", achieved "
       << fmt6(optimum.value > 0 ? decentral.value / optimum.value : 1.0) << "\n";
  return {text.str(), csv.str()};
}

}  // namespace probgreedy
