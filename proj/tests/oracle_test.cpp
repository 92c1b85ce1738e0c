#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "impsel/oracle.hpp"
#include "impsel/selection.hpp"
#include "test_support.hpp"

namespace impsel {
namespace {

TEST(OptK, Example9) {
  const auto opt = opt_k(testing::example_matrix(), 6);
  EXPECT_EQ(opt.score, 27);
  EXPECT_EQ(opt.set, (AgentSet{1, 2, 3, 5, 6, 8}));
}

TEST(OptK, ZeroMatrixPrefersSmallIndices) {
  const auto opt = opt_k(WeightMatrix(7), 4);
  EXPECT_EQ(opt.score, 0);
  EXPECT_EQ(opt.set, (AgentSet{1, 2, 3, 4}));
  EXPECT_THROW(opt_k(WeightMatrix(3), 4), PreconditionError);
}

TEST(OptK, MatchesSubsetEnumeration) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 10));
    const int k = static_cast<int>(rng.uniform_int(1, n));
    const auto a = testing::random_sparse_matrix(n, 5, 0.3, rng);
    const auto opt = opt_k(a, k);
    EXPECT_EQ(opt.score, testing::brute_force_opt_k(a, k));
    EXPECT_EQ(static_cast<int>(opt.set.size()), k);
    EXPECT_EQ(total_score(a, opt.set), opt.score);
    auto sums = a.column_sums();
    std::sort(sums.rbegin(), sums.rend());
    EXPECT_EQ(opt.score, std::accumulate(sums.begin(), sums.begin() + k, Weight{0}));
  }
}

TEST(OptAssignment, HandBuiltSixAgents) {
  // Two jobs, capacity two. Agent 1 is strong in both jobs, agent 2 only in job 2.
  const auto a1 = WeightMatrix::from_rows({
      {0, 0, 1, 0, 0, 0},
      {5, 0, 0, 0, 0, 2},
      {4, 0, 0, 0, 0, 0},
      {0, 1, 3, 0, 0, 0},
      {0, 0, 0, 2, 0, 0},
      {0, 0, 0, 0, 1, 0},
  });
  const auto a2 = WeightMatrix::from_rows({
      {0, 6, 0, 0, 0, 0},
      {7, 0, 0, 0, 0, 0},
      {1, 3, 0, 0, 0, 0},
      {0, 0, 0, 0, 4, 0},
      {0, 0, 0, 0, 0, 1},
      {0, 0, 2, 0, 0, 0},
  });
  const InstanceTuple t({a1, a2});
  const auto opt = opt_assignment(t, 2);
  EXPECT_EQ(opt.score, testing::brute_force_opt_assignment(t, 2));
  EXPECT_EQ(opt.score, 26);  // job 1 takes {1, 3}, job 2 takes {2, 5}
  EXPECT_TRUE(is_feasible(opt.assignment, 2));
  EXPECT_EQ(assignment_score(t, opt.assignment), opt.score);
}

TEST(OptAssignment, MatchesLabelEnumeration) {
  Rng rng(19);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 7));
    const int m = static_cast<int>(rng.uniform_int(1, 3));
    const int k = static_cast<int>(rng.uniform_int(1, n));
    const auto t = testing::random_tuple(n, m, 6, rng);
    const auto opt = opt_assignment(t, k);
    EXPECT_EQ(opt.score, testing::brute_force_opt_assignment(t, k)) << n << "," << m << "," << k;
    EXPECT_TRUE(is_feasible(opt.assignment, k));
    EXPECT_EQ(assignment_score(t, opt.assignment), opt.score);
  }
}

TEST(OptAssignment, SingleJobMatchesOptK) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::random_sparse_matrix(12, 8, 0.4, rng);
    const int k = static_cast<int>(rng.uniform_int(1, 12));
    EXPECT_EQ(opt_assignment(InstanceTuple({a}), k).score, opt_k(a, k).score);
  }
}

TEST(OptAssignment, ZeroTupleAndBudget) {
  const InstanceTuple zero({WeightMatrix(6), WeightMatrix(6)});
  EXPECT_EQ(opt_assignment(zero, 2).score, 0);
  EXPECT_THROW(opt_assignment(zero, 2, 10), BudgetExceeded);
}

TEST(Tightness, NineSix) {
  const auto ps = PartitionSystem::build(9, 6);
  const auto a = tightness_instance(9, 6, ps);
  int votes = 0;
  for (Agent i = 1; i <= 9; ++i)
    for (Agent j = 1; j <= 9; ++j)
      if (a(i, j) != 0) {
        EXPECT_EQ(a(i, j), 1);
        EXPECT_LE(j, 3);
        EXPECT_GT(i, 3);
        ++votes;
      }
  EXPECT_EQ(votes, 3);
  EXPECT_EQ(select_k(a, 6, ps).score, 1);
  EXPECT_EQ(opt_k(a, 6).score, 3);
}

TEST(Tightness, SmallAndLargerCases) {
  for (auto [n, k, b] : std::vector<std::tuple<int, int, int>>{{8, 8, 2}, {32, 16, 4}}) {
    const auto ps = PartitionSystem::build(n, k);
    const auto a = tightness_instance(n, k, ps);
    EXPECT_EQ(select_k(a, k, ps).score, 1);
    EXPECT_EQ(opt_k(a, k).score, b);
  }
  EXPECT_THROW(PartitionSystem::build(32, 8), PreconditionError);
}

TEST(Tightness, VoterIsSmallestEligible) {
  for (auto [n, k] : testing::conforming_pairs(60, false)) {
    const auto ps = PartitionSystem::build(n, k);
    const auto a = tightness_instance(n, k, ps);
    const int b = ps.b();
    for (Agent j = 1; j <= b; ++j) {
      Agent h = 0;
      for (Agent v : ps.candidates(ps.right(j)))
        if (v > b) {
          h = v;
          break;
        }
      ASSERT_NE(h, 0);
      for (Agent i = 1; i <= n; ++i) EXPECT_EQ(a(i, j), i == h ? 1 : 0);
    }
    EXPECT_EQ(total_score(a, all_agents(n)), b);
  }
}

TEST(RatioReport, ExactComparison) {
  auto r = make_ratio_report("x", 9, 27, Rational(1, 3));
  EXPECT_TRUE(r.pass);
  r = make_ratio_report("x", 8, 27, Rational(1, 3));
  EXPECT_FALSE(r.pass);
  r = make_ratio_report("x", 0, 0, Rational(1, 3));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.ratio, 1.0);
}

TEST(CheckImpartial, SelectKCertifiedOnSparseDeviations) {
  const auto ps = PartitionSystem::build(9, 6);
  DeviationSpace space;
  space.n = 9;
  space.grid = {0, 1};
  space.max_support = 2;
  space.base_instances = 3;
  space.seed = 5;
  const auto report = check_impartial(
      "select", as_assignment_mechanism([&](const WeightMatrix& a) { return select_k(a, 6, ps).selected; }), space);
  EXPECT_TRUE(report.certified());
  // 3 bases * 9 agents * (1 + 8 + 28) rows.
  EXPECT_EQ(report.trials, 3u * 9u * 37u);
}

TEST(CheckImpartial, TopKCaughtOnMutualVote) {
  WeightMatrix a(9);
  a.set(1, 2, 1);
  a.set(2, 1, 1);
  DeviationSpace space;
  space.n = 9;
  space.grid = {0, 1};
  space.max_support = 1;
  space.fixed_bases = {InstanceTuple({a})};
  const auto report = check_impartial(
      "top-k", as_assignment_mechanism([](const WeightMatrix& x) { return top_k_baseline(x, 1); }), space);
  EXPECT_GT(report.violation_count, 0u);
  EXPECT_FALSE(report.certified());
  ASSERT_FALSE(report.violations.empty());
  EXPECT_NE(report.violations.front().before, report.violations.front().after);
}

// Same winner rule as Select_k but ranked by full column sums, so a
// candidate's own row moves its co-candidates' scores.
TEST(CheckImpartial, CatchesFullScoreVariant) {
  const auto ps = PartitionSystem::build(9, 6);
  const auto mech = [&](const WeightMatrix& a) {
    AgentSet out;
    for (int p = 1; p <= 6; ++p) {
      Agent best = 0;
      for (Agent j : ps.candidates(p))
        if (best == 0 || std::pair(a.column_sum(j), j) > std::pair(a.column_sum(best), best)) best = j;
      out.push_back(best);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  DeviationSpace space;
  space.n = 9;
  space.grid = {0, 1};
  space.max_support = 1;
  space.base_instances = 2;
  EXPECT_GT(check_impartial("full-score", as_assignment_mechanism(mech), space).violation_count, 0u);
}

TEST(CheckImpartial, ConstantMechanismRandomRows) {
  DeviationSpace space;
  space.n = 12;
  space.exhaustive = false;
  space.random_deviations = 20;
  space.base_instances = 4;
  const auto report = check_impartial("constant", [](const InstanceTuple&) { return Assignment{{{1, 2, 3}}}; }, space);
  EXPECT_TRUE(report.certified());
  EXPECT_EQ(report.trials, 4u * 12u * 20u);
}

TEST(CheckImpartial, BudgetExhaustionIsReported) {
  DeviationSpace space;
  space.n = 9;
  space.base_instances = 2;
  space.budget = 50;
  const auto report = check_impartial("constant", [](const InstanceTuple&) { return Assignment{{{1}}}; }, space);
  EXPECT_TRUE(report.budget_exhausted);
  EXPECT_FALSE(report.certified());
  EXPECT_LE(report.trials, 50u);
}

TEST(CheckImpartial, ThreadCountDoesNotChangeTheReport) {
  DeviationSpace space;
  space.n = 6;
  space.grid = {0, 1};
  space.max_support = 2;
  space.base_instances = 5;
  const auto mech = as_assignment_mechanism([](const WeightMatrix& x) { return top_k_baseline(x, 2); });
  const auto one = check_impartial("top-k", mech, space);
  space.threads = 3;
  const auto three = check_impartial("top-k", mech, space);
  EXPECT_EQ(one.trials, three.trials);
  EXPECT_EQ(one.violation_count, three.violation_count);
  ASSERT_EQ(one.violations.size(), three.violations.size());
  for (std::size_t v = 0; v < one.violations.size(); ++v) {
    EXPECT_EQ(one.violations[v].instance, three.violations[v].instance);
    EXPECT_EQ(one.violations[v].agent, three.violations[v].agent);
    EXPECT_EQ(one.violations[v].deviating_row, three.violations[v].deviating_row);
  }
}

}  // namespace
}  // namespace impsel
