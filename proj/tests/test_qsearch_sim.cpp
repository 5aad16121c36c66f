#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qbfs/qsearch_sim.hpp"
#include "test_support.hpp"

using namespace qbfs;

TEST(GroverProbability, Table) {
  // sin^2((2j+1) theta) with sin^2 theta = 1/4, i.e. theta = pi/6.
  const double theta = grover_angle(4, 1);
  EXPECT_NEAR(grover_success_probability(0, theta), 0.25, 1e-15);
  EXPECT_NEAR(grover_success_probability(1, theta), 1.0, 1e-15);
  EXPECT_NEAR(grover_success_probability(2, theta), 0.25, 1e-15);
  EXPECT_NEAR(grover_success_probability(3, theta), 0.25, 1e-15);
  EXPECT_NEAR(grover_success_probability(4, theta), 1.0, 1e-15);
}

TEST(SimulateQSearch, AllMarkedSucceedsImmediately) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SplitMix64 rng(seed);
    const TrialOutcome o = simulate_qsearch(64, 64, 0.1, rng);
    ASSERT_TRUE(o.succeeded);
    ASSERT_EQ(o.attempts, 1u);
    ASSERT_LE(o.grover_iterations_used, 1u);
  }
}

TEST(SimulateQSearch, NoMarkedRunsFullSchedule) {
  SplitMix64 rng(3);
  const TrialOutcome o = simulate_qsearch(100, 0, 0.1, rng);
  EXPECT_FALSE(o.succeeded);
  EXPECT_EQ(o.attempts, 3u * k_max(100));
  EXPECT_LE(o.first_round_iterations, o.grover_iterations_used);
}

TEST(SimulateQSearch, Deterministic) {
  SplitMix64 a(77);
  SplitMix64 b(77);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(simulate_qsearch(256, 3, 0.1, a), simulate_qsearch(256, 3, 0.1, b));
}

TEST(SimulateQSearch, JNeverExceedsCurrentM) {
  SplitMix64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const TrialOutcome o = simulate_qsearch(1024, 0, 0.1, rng);
    std::uint64_t bound = 0;
    for (std::uint32_t a = 1; a <= o.attempts; ++a) bound += m_k(1024, a);
    ASSERT_LE(o.grover_iterations_used, bound);
  }
}

TEST(RunningStats, MergeMatchesSequential) {
  RunningStats all;
  RunningStats left;
  RunningStats right;
  SplitMix64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform01() * 10.0;
    all.add(x);
    (i < 400 ? left : right).add(x);
  }
  left.merge(right);
  EXPECT_EQ(left.count, all.count);
  EXPECT_NEAR(left.mean, all.mean, 1e-12);
  EXPECT_NEAR(left.variance(), all.variance(), 1e-10);
}

TEST(MonteCarlo, AllMarkedIsOneHalf) {
  const McEstimate e = mc_expected_iterations(64, 64, 0.1, 20000, 1);
  EXPECT_NEAR(e.mean, 0.5, 4.0 * e.standard_error);
  EXPECT_EQ(e.success_rate, 1.0);
}

TEST(MonteCarlo, AgreesWithClosedForm) {
  for (const auto& [L, t] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{16, 1}, {64, 4}, {256, 2}}) {
    const McEstimate e = mc_expected_iterations(L, t, 0.1, 40000, 11);
    const double exact = expected_iterations_one(L, t);
    EXPECT_NEAR(e.mean, exact, 0.03 * exact) << L << "," << t;
    EXPECT_GT(e.success_rate, 0.9);
  }
}

TEST(MonteCarlo, AllEqualsOneForSingleMarked) {
  const McEstimate one = mc_expected_iterations(64, 1, 0.1, 5000, 21);
  const McEstimate all = mc_expected_iterations_all(64, 1, 0.1, 5000, 21);
  EXPECT_EQ(one.mean, all.mean);
  EXPECT_EQ(one.standard_error, all.standard_error);
}

TEST(MonteCarlo, AllAgreesWithClosedForm) {
  const McEstimate e = mc_expected_iterations_all(64, 8, 0.1, 20000, 4);
  const double exact = expected_iterations_all(64, 8);
  EXPECT_NEAR(e.mean, exact, 0.03 * exact);
}

TEST(MonteCarlo, DecreasesWithMarkedCount) {
  const double a = mc_expected_iterations(256, 1, 0.1, 20000, 8).mean;
  const double b = mc_expected_iterations(256, 4, 0.1, 20000, 8).mean;
  const double c = mc_expected_iterations(256, 64, 0.1, 20000, 8).mean;
  EXPECT_GT(a, b);
  EXPECT_GT(b, c);
}

TEST(MonteCarlo, StandardErrorShrinksWithTrials) {
  const McEstimate small = mc_expected_iterations(64, 2, 0.1, 4000, 13);
  const McEstimate large = mc_expected_iterations(64, 2, 0.1, 64000, 13);
  const double ratio = small.standard_error / large.standard_error;
  EXPECT_NEAR(ratio, 4.0, 0.4);
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
  const McEstimate one = mc_expected_iterations(128, 3, 0.1, 10000, 99, {.workers = 1});
  const McEstimate four = mc_expected_iterations(128, 3, 0.1, 10000, 99, {.workers = 4});
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_EQ(one.standard_error, four.standard_error);
  EXPECT_EQ(one.success_rate, four.success_rate);
  EXPECT_EQ(one.mean_full_schedule, four.mean_full_schedule);
}

TEST(MonteCarlo, RejectsTooFewTrials) {
  EXPECT_THROW((void)mc_expected_iterations(64, 1, 0.1, 999, 0), std::domain_error);
  EXPECT_THROW((void)mc_expected_iterations(64, 0, 0.1, 1000, 0), std::domain_error);
  EXPECT_THROW((void)mc_expected_iterations_all(64, 0, 0.1, 1000, 0), std::domain_error);
}

TEST(QbfsEmulation, LevelsMatchClassicalBfs) {
  for (std::uint64_t g = 0; g < 50; ++g) {
    const FlowNetwork n = test::random_small_network(g, 60, 200);
    const BfsResult bfs = bfs_level(build_residual(n), n.source(), n.sink(), test::fake_clock());
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      SplitMix64 rng(seed);
      const QbfsEmulation q = emulate_qbfs_levels(n, rng);
      for (VertexId v = 1; v <= n.vertex_count(); ++v) {
        ASSERT_EQ(q.levels.reached(v), bfs.levels.reached(v)) << g << "/" << seed << " v" << v;
        if (bfs.levels.reached(v)) {
          ASSERT_EQ(q.levels[v], bfs.levels[v]);
        }
      }
    }
  }
}

TEST(QbfsEmulation, DiscoveryOrderDependsOnSeed) {
  // Star: the order of the leaves is the only freedom.
  std::vector<Edge> edges;
  for (VertexId v = 2; v <= 9; ++v) edges.push_back({1, v, 1});
  const FlowNetwork star(10, 1, 10, std::move(edges));
  SplitMix64 a(1);
  const auto first = emulate_qbfs_levels(star, a).discovery_order;
  bool differs = false;
  for (std::uint64_t seed = 2; seed < 20 && !differs; ++seed) {
    SplitMix64 rng(seed);
    differs = emulate_qbfs_levels(star, rng).discovery_order != first;
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(first.front(), 1u);
  EXPECT_EQ(first.size(), 9u);
}
