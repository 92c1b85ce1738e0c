#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "impsel/cli.hpp"
#include "impsel/io.hpp"
#include "test_support.hpp"

namespace impsel {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;

  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, SelectExample9WithOracle) {
  const auto r = run({"select", testing::data_path("example9.csv"), "-k", "6", "--oracle"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["score"], 25);
  EXPECT_EQ(j["opt_score"], 27);
  EXPECT_EQ(j["alpha"], "1/3");
  EXPECT_EQ(j["pass"], true);
}

TEST(Cli, SelectWithPartitionFile) {
  const auto r = run({"select", testing::data_path("example9.csv"), "--partition-file",
                      testing::data_path("example9_grid_partition.json"), "--oracle"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["score"], 17);
  EXPECT_EQ(r.json()["ratio"], "17/27");
  EXPECT_EQ(run({"select", testing::data_path("example9.csv"), "-k", "4", "--partition-file",
                 testing::data_path("example9_grid_partition.json")}).code,
            kExitUsage);
}

TEST(Cli, SelectZeroInstance) {
  const auto r = run({"select", testing::data_path("zero.csv"), "-k", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["score"], 0);
  const auto small_k = run({"select", testing::data_path("zero.csv"), "-k", "3"});
  EXPECT_EQ(small_k.code, kExitBudget);
  EXPECT_NE(small_k.err.find("sqrt"), std::string::npos);
}

TEST(Cli, Tightness) {
  const auto r = run({"tightness", "-n", "9", "-k", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["ratio"], "1/3");
  EXPECT_EQ(j["select_score"], 1);
  EXPECT_EQ(j["opt_score"], 3);
  EXPECT_EQ(run({"tightness", "-n", "10", "-k", "6"}).code, kExitUsage);
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"select"}).code, kExitUsage);
  EXPECT_EQ(run({"select", "/nonexistent.csv", "-k", "6"}).code, kExitUsage);
  EXPECT_EQ(run({"select", testing::data_path("example9.csv")}).code, kExitUsage);
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("select"), std::string::npos);

  const std::string bad = ::testing::TempDir() + "impsel_bad.json";
  std::ofstream(bad) << R"({"n": 3, "triplets": [[1, 1, 5]]})";
  const auto r = run({"select", bad, "-k", "2"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("diagonal"), std::string::npos);
}

TEST(Cli, OptAndAssign) {
  const std::string path = ::testing::TempDir() + "impsel_tuple.json";
  Rng rng(1);
  InstanceFile file;
  file.data = testing::random_tuple(16, 2, 5, rng);
  std::ofstream(path) << serialize_instance(file);

  const auto opt = run({"opt", path, "-k", "8", "--assignment"});
  ASSERT_EQ(opt.code, 0) << opt.err;
  const auto assign = run({"assign", path, "-k", "8", "--oracle"});
  ASSERT_EQ(assign.code, 0) << assign.err;
  EXPECT_EQ(assign.json()["opt_score"], opt.json()["score"]);
  EXPECT_EQ(assign.json()["alpha"], "1/8");
  EXPECT_EQ(assign.json()["jobs"].size(), 2u);

  EXPECT_EQ(run({"assign", path, "-k", "8", "--oracle", "--budget", "5"}).code, kExitBudget);
  ::setenv("IMPSEL_ORACLE_BUDGET", "5", 1);
  EXPECT_EQ(run({"opt", path, "-k", "8", "--assignment"}).code, kExitBudget);
  ::unsetenv("IMPSEL_ORACLE_BUDGET");

  const auto single = run({"opt", testing::data_path("example9.csv"), "-k", "6"});
  ASSERT_EQ(single.code, 0);
  EXPECT_EQ(single.json()["score"], 27);
}

TEST(Cli, VerifyExitCodes) {
  const auto topk = run({"verify", "top-k", "-n", "9", "-k", "1", "--grid", "0,1", "--max-support", "1", "--base",
                         testing::data_path("mutual_vote9.json")});
  EXPECT_EQ(topk.code, kExitFailure) << topk.err;
  EXPECT_GT(topk.json()["violation_count"].get<int>(), 0);

  const auto select = run({"verify", "select", "-n", "9", "-k", "6", "--grid", "0,1", "--max-support", "1",
                           "--bases", "2", "--threads", "2"});
  EXPECT_EQ(select.code, 0) << select.err;
  EXPECT_EQ(select.json()["certified"], true);

  const auto budget = run({"verify", "constant", "-n", "9", "-k", "2", "--budget", "10"});
  EXPECT_EQ(budget.code, kExitBudget);
  EXPECT_EQ(budget.json()["budget_exhausted"], true);

  EXPECT_EQ(run({"verify", "select", "-n", "9", "-k", "6", "--m", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "gen-select", "-n", "10", "-k", "6"}).code, kExitBudget);
  EXPECT_EQ(run({"verify", "oracle", "-n", "9", "-k", "6"}).code, kExitUsage);
}

TEST(Cli, Partitions) {
  const auto r = run({"partitions", "-n", "9", "-k", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["candidate_sets"][0], nlohmann::json({1, 2, 3}));
  EXPECT_EQ(r.json()["properties_hold"], true);
  const auto bad = run({"partitions", "-n", "9", "-k", "5"});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_NE(bad.err.find("even"), std::string::npos);
}

TEST(Cli, AlphaGrid) {
  const auto tsv = run({"alpha-grid", "--n-min", "9", "--n-max", "9", "--k-min", "6", "--k-max", "6", "--format", "tsv"});
  ASSERT_EQ(tsv.code, 0);
  EXPECT_EQ(tsv.out, "n\tk\talpha_num\talpha_den\talpha_decimal\n9\t6\t1\t3\t0.333333\n");
  const auto json = run({"alpha-grid", "--n-min", "16", "--n-max", "16", "--k-min", "8", "--k-max", "8", "--m", "2"});
  EXPECT_EQ(json.json()["cells"][0]["alpha"], "1/8");
  const auto pretty = run({"--pretty", "alpha-grid", "--n-min", "9", "--n-max", "9", "--k-min", "4", "--k-max", "6"});
  EXPECT_NE(pretty.out.find("n/a"), std::string::npos);
}

TEST(Cli, GenerateIsSeeded) {
  const auto a = run({"--seed", "5", "generate", "uniform-int", "-n", "9", "--max", "4"});
  const auto b = run({"generate", "uniform-int", "-n", "9", "--max", "4", "--seed", "5"});
  const auto c = run({"generate", "uniform-int", "-n", "9", "--max", "4", "--seed", "6"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_NO_THROW(parse_instance(a.out, Format::Json));

  const auto csv = run({"generate", "unweighted-bernoulli", "-n", "6", "-p", "0.5", "--m", "2", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(parse_instance(csv.out, Format::Csv).as_tuple().m(), 2);

  const auto tight = run({"generate", "tightness", "-n", "9", "-k", "6"});
  ASSERT_EQ(tight.code, 0);
  EXPECT_EQ(tight.json()["triplets"].size(), 3u);
  EXPECT_EQ(run({"generate", "tightness", "-n", "9"}).code, kExitUsage);
}

TEST(Cli, PrettyOutput) {
  const auto r = run({"--pretty", "select", testing::data_path("example9.csv"), "-k", "6"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("score"), std::string::npos);
  EXPECT_NE(r.out.find("2 3 5 6 8"), std::string::npos);
}

}  // namespace
}  // namespace impsel
