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

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "probgreedy/reinforce.hpp"

namespace probgreedy {
namespace {

namespace fs = std::filesystem;

std::vector<std::vector<std::string>> CsvRows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

ExperimentConfig ChainConfigFor(const std::string& probs, int n) {
  return parse_config(R"({"chain": {"n": )" + std::to_string(n) + R"(, "base_probs": )" + probs +
                      "}}");
}

TEST(ConfigTest, SyntaxErrorsReportLineAndColumn) {
  try {
    parse_config("{\n  \"chain\": {\n    \"n\": 3,\n  ]\n}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.where().rfind("line 4", 0), 0u) << e.what();
  }
}

TEST(ConfigTest, FieldErrorsNameTheField) {
  auto where = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.where();
    }
    return std::string("no error");
  };
  EXPECT_EQ(where(R"({"chain": {"n": 3, "base_probs": [0.5, 1.5]}})"), "chain.base_probs[1]");
  EXPECT_EQ(where(R"({"chain": {"n": 3, "base_probs": [0.5]}})"), "chain.base_probs");
  EXPECT_EQ(where(R"({"chain": {"n": 3, "base_probs": [0.5, 0.5], "trials": [1, 0]}})"),
            "chain.trials[1]");
  EXPECT_EQ(where(R"({"chain": {"base_probs": [0.5]}})"), "chain.n");
  EXPECT_EQ(where(R"({"engine": "fast"})"), "engine");
  EXPECT_EQ(where(R"({"iterations": 0})"), "iterations");
  EXPECT_EQ(where(R"({"colour": 1})"), "colour");
  EXPECT_EQ(where(R"({"chain": {"n": 3, "base_probs": [0.5, 0.5]}, "mask": "1"})"), "mask");
  EXPECT_EQ(where(R"({"instance": {"generate": {"locations_per_agent": 30}}})"),
            "instance.generate.locations_per_agent");
  EXPECT_EQ(where(R"({"instance": {}})"), "instance");
}

TEST(ConfigTest, Defaults) {
  const auto c = parse_config("{}");
  EXPECT_EQ(c.engine, Engine::kDp);
  EXPECT_EQ(c.iterations, 10000);
  EXPECT_EQ(c.cap, 24);
  EXPECT_FALSE(c.chain.has_value());
  EXPECT_THROW(cmd_alpha(c), ConfigError);
}

TEST(ConfigTest, AgentProbabilitiesFollowThePermutation) {
  const auto c = parse_config(R"({"chain": {"n": 3, "agent_probs": [0.1, 0.2, 0.3]}})");
  const auto chain = build_chain(c, {2, 0, 1});
  EXPECT_EQ(chain.base_probs()[0], 0.3);
  EXPECT_EQ(chain.base_probs()[1], 0.1);
}

TEST(AlphaCommandTest, ThreeAgentChain) {
  const auto r = cmd_alpha(ChainConfigFor("[0.5, 0.5]", 3));
  EXPECT_NE(r.text.find("alpha_p = 0.354167"), std::string::npos) << r.text;
  const auto rows = CsvRows(r.csv);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1][3], "0.25");
  EXPECT_EQ(rows[2][3], "0.5");
  EXPECT_EQ(rows[3][3], "0.25");
}

TEST(AlphaCommandTest, CertainChainGivesOneHalf) {
  const auto r = cmd_alpha(ChainConfigFor("[1, 1, 1, 1]", 5));
  EXPECT_NE(r.text.find("alpha_p = 0.5\n"), std::string::npos);
}

TEST(AlphaCommandTest, EmittedPmfReconcilesWithEmittedAlpha) {
  const auto r = cmd_alpha(ChainConfigFor("[0.31, 0.9, 0.44, 0.62, 0.18, 0.77, 0.5, 0.66, 0.2]", 10));
  const auto rows = CsvRows(r.csv);
  const std::size_t n = 10;
  ASSERT_EQ(rows.size(), n + 2);
  for (int col : {3, 4, 5}) {
    double alpha = 0.0;
    double sum = 0.0;
    for (std::size_t l = 1; l <= n; ++l) {
      alpha += std::stod(rows[l][2]) * std::stod(rows[l][static_cast<std::size_t>(col)]);
      sum += std::stod(rows[l][static_cast<std::size_t>(col)]);
    }
    EXPECT_NEAR(alpha, std::stod(rows[n + 1][static_cast<std::size_t>(col)]), 1e-12);
    if (col != 4) EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  // the closed-form column deviates from dp on a 10-agent chain
  EXPECT_NE(rows[2][3], rows[2][4]);
}

TEST(AlphaCommandTest, EnumerationSkippedOrRefusedAboveCap) {
  auto c = parse_config(R"({"chain": {"n": 4, "base_probs": [0.5, 0.5, 0.5]}, "cap": 2})");
  const auto r = cmd_alpha(c);
  EXPECT_NE(r.text.find("n/a (cap)"), std::string::npos);
  c.engine = Engine::kEnumerate;
  EXPECT_THROW(cmd_alpha(c), CapExceeded);
}

TEST(ReinforceCommandTest, EightAgentRowHasSevenColumns) {
  const auto c = ChainConfigFor("[0.61, 0.45, 0.72, 0.38, 0.55, 0.49, 0.8]", 8);
  const auto r = cmd_reinforce(c);
  const auto rows = CsvRows(r.csv);
  int sweep_rows = 0;
  int starred = 0;
  for (const auto& row : rows) {
    if (row[0] == "sweep") {
      ++sweep_rows;
      starred += row[4] == "1";
    }
  }
  EXPECT_EQ(sweep_rows, 7);
  EXPECT_EQ(starred, 1);
  EXPECT_EQ(std::count(r.text.begin(), r.text.end(), '*'), 1);
}

TEST(ReinforceCommandTest, TwoAgentsAndGreedyTrace) {
  const auto r = cmd_reinforce(ChainConfigFor("[0.4]", 2));
  EXPECT_EQ(CsvRows(r.csv).size(), 3u);  // header, baseline, one edge

  auto c = ChainConfigFor("[0.5, 0.7, 0.3]", 4);
  c.budget = 3;
  const auto g = cmd_reinforce(c);
  int rounds = 0;
  for (const auto& row : CsvRows(g.csv)) rounds += row[0] == "greedy";
  EXPECT_EQ(rounds, 3);
  EXPECT_NE(g.text.find("round 3: edge"), std::string::npos);
}

TEST(EnumerateCommandTest, Examples) {
  const auto three = CsvRows(cmd_enumerate(ChainConfigFor("[0.5, 0.5]", 3)).csv);
  ASSERT_EQ(three.size(), 6u);  // header, 4 masks, total
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(three[k][1], "0.25");
  EXPECT_EQ(three[5][0], "total");
  EXPECT_EQ(three[5][1], "1");

  const auto two = CsvRows(cmd_enumerate(ChainConfigFor("[0.3]", 2)).csv);
  ASSERT_EQ(two.size(), 4u);
  EXPECT_EQ(two[1][0], "0");
  EXPECT_NEAR(std::stod(two[1][1]), 0.7, 1e-15);
  EXPECT_EQ(two[1][2], "1");
  EXPECT_EQ(two[2][0], "1");
  EXPECT_NEAR(std::stod(two[2][1]), 0.3, 1e-15);
  EXPECT_EQ(two[2][2], "2");

  const auto five = CsvRows(cmd_enumerate(ChainConfigFor("[1, 1, 1, 1]", 5)).csv);
  int nonzero = 0;
  for (std::size_t k = 1; k + 1 < five.size(); ++k) {
    if (std::stod(five[k][1]) != 0.0) {
      ++nonzero;
      EXPECT_EQ(five[k][0], "1111");
      EXPECT_EQ(five[k][2], "5");
    }
  }
  EXPECT_EQ(nonzero, 1);

  auto big = ChainConfigFor("[0.5, 0.5, 0.5]", 4);
  big.cap = 2;
  EXPECT_THROW(cmd_enumerate(big), CapExceeded);
}

ExperimentConfig SmallBenchmark() {
  return parse_config(R"({
    "instance": {"generate": {"n": 4, "num_locations": 10, "locations_per_agent": 5,
                              "num_points": 300, "kappa": 1}, "seed": 3},
    "chain": {"n": 4, "agent_probs": [0.5, 0.6, 0.7, 0.4]},
    "permutations": ["ABCD", "DBCA"],
    "iterations": 400,
    "seed": 5
  })");
}

TEST(SimulateCommandTest, RowsPerPermutation) {
  const auto r = cmd_simulate(SmallBenchmark());
  const auto rows = CsvRows(r.csv);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][0], "ABCD");
  EXPECT_EQ(rows[2][0], "DBCA");
  for (std::size_t k = 1; k <= 2; ++k) {
    EXPECT_GT(std::stod(rows[k][10]), std::stod(rows[k][5]));  // alpha' > alpha
    EXPECT_EQ(rows[k][12], "1");                                // exact optimum
  }
}

TEST(SimulateCommandTest, CertainDeliveryIsDeterministicGreedy) {
  auto c = SmallBenchmark();
  c.chain->agent_probs = {1.0, 1.0, 1.0, 1.0};
  c.iterations = 1;
  c.permutations = {"ABCD"};
  const auto rows = CsvRows(cmd_simulate(c).csv);
  const auto inst = build_instance(c);
  const double greedy = sequential_greedy(CoverageOracle(inst), inst.matroid()).value;
  EXPECT_EQ(std::stod(rows[1][3]), greedy);
  EXPECT_EQ(rows[1][4], "0");
}

TEST(SimulateCommandTest, SameSeedSameBytes) {
  EXPECT_EQ(cmd_simulate(SmallBenchmark()).csv, cmd_simulate(SmallBenchmark()).csv);
}

TEST(SolveCommandTest, ReportsBothAlgorithms) {
  auto c = SmallBenchmark();
  c.mask = "101";
  const auto r = cmd_solve(c);
  EXPECT_NE(r.text.find("clique number 2"), std::string::npos);
  int seq = 0;
  int dec = 0;
  for (const auto& row : CsvRows(r.csv)) {
    seq += row[0] == "sequential";
    dec += row[0] == "decentralized";
  }
  EXPECT_EQ(seq, 4);
  EXPECT_EQ(dec, 4);
  c.mask = "10";
  EXPECT_THROW(cmd_solve(c), ConfigError);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("probgreedy_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& body) {
    const auto p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  int Run(const std::string& args) {
    const std::string cmd = std::string(PROBGREEDY_CLI_PATH) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  }

  fs::path dir_;
};

TEST_F(CliTest, ExitCodes) {
  const auto good = Write("good.json", R"({"chain": {"n": 3, "base_probs": [0.5, 0.5]}})");
  EXPECT_EQ(Run("alpha --config " + good), 0);
  const auto bad = Write("bad.json", R"({"chain": {"n": 3, "base_probs": [0.5, 2]}})");
  EXPECT_EQ(Run("alpha --config " + bad), 2);
  EXPECT_EQ(Run("alpha --config " + (dir_ / "missing.json").string()), 2);
  EXPECT_EQ(Run("alpha --config " + good + " --engine turbo"), 2);
  const auto longchain = Write("long.json", R"({"chain": {"n": 6, "base_probs": [0.5, 0.5, 0.5, 0.5, 0.5]}, "cap": 3})");
  EXPECT_EQ(Run("enumerate --config " + longchain), 3);
  EXPECT_EQ(Run("alpha --config " + longchain + " --engine enumerate"), 3);
}

TEST_F(CliTest, CsvIsByteIdenticalAcrossRuns) {
  const auto cfg = Write("c.json", R"({"chain": {"n": 4, "base_probs": [0.5, 0.7, 0.3]}, "budget": 2})");
  for (const char* verb : {"alpha", "reinforce", "enumerate"}) {
    const auto a = (dir_ / "a.csv").string();
    const auto b = (dir_ / "b.csv").string();
    ASSERT_EQ(Run(std::string(verb) + " --config " + cfg + " --csv " + a), 0);
    ASSERT_EQ(Run(std::string(verb) + " --config " + cfg + " --csv " + b), 0);
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    EXPECT_FALSE(sa.str().empty());
    EXPECT_EQ(sa.str(), sb.str()) << verb;
  }
}

}  // namespace
}  // namespace probgreedy
