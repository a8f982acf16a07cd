#include "acc/solver.h"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.h"

namespace acc {
namespace {

using testing::BruteForceOptimum;
using testing::RandomState;
using testing::ToDense;

TEST(ClusterSimilarityTest, Examples) {
  SimilarityState state(3);
  state.SetSeed(Edge::Make(0, 1), 0.5);
  state.SetSeed(Edge::Make(0, 2), -0.2);
  state.SetSeed(Edge::Make(1, 2), 0.9);
  const auto objects = AllObjects(3);
  const Clustering c(std::vector<int>{0, 1, 1});
  EXPECT_DOUBLE_EQ(ClusterSimilarity(state, objects, c, 0, 1), 0.3);
  EXPECT_EQ(ClusterSimilarity(state, objects, c, 0, 0), 0.0);
}

TEST(ClusterSimilarityTest, MoveChangesObjectiveByScoreDifference) {
  Rng rng(2);
  const SimilarityState state = RandomState(9, rng);
  const auto objects = AllObjects(9);
  std::vector<int> labels{0, 1, 2, 0, 1, 2, 0, 1, 2};
  const Clustering before(labels);
  for (std::size_t u = 0; u < labels.size(); ++u) {
    for (int target = 0; target < 3; ++target) {
      std::vector<int> moved = labels;
      moved[u] = target;
      const Clustering after(moved);
      const double expected =
          ClusterSimilarity(state, objects, before, u, target) -
          ClusterSimilarity(state, objects, before, u, labels[u]);
      EXPECT_NEAR(MaxCorObjective(state, after) -
                      MaxCorObjective(state, before),
                  expected, 1e-12);
    }
  }
}

TEST(LocalSearchTest, AllPositiveGivesOneCluster) {
  const SimilarityState state(20, 1.0);
  const SolverResult r = LocalSearch(state, SolverConfig{});
  EXPECT_EQ(r.clustering.num_clusters(), 1u);
  EXPECT_EQ(r.objective, 190.0);
}

TEST(LocalSearchTest, AllNegativeGivesSingletons) {
  const SimilarityState state(20, -1.0);
  SolverConfig config;
  config.initial_k = 3;
  const SolverResult r = LocalSearch(state, config);
  EXPECT_EQ(r.clustering.num_clusters(), 20u);
  EXPECT_EQ(r.objective, 0.0);
}

TEST(LocalSearchTest, RejectsEmptySubsetAndBadConfig) {
  const SimilarityState state(4);
  EXPECT_THROW(LocalSearch(state, std::span<const ObjectId>{}, SolverConfig{}),
               std::invalid_argument);
  SolverConfig bad;
  bad.repetitions = 0;
  EXPECT_THROW(LocalSearch(state, bad), std::invalid_argument);
  bad = {};
  bad.stop_threshold = 0.0;
  EXPECT_THROW(LocalSearch(state, bad), std::invalid_argument);
}

TEST(LocalSearchTest, SingleObject) {
  const SimilarityState state(4);
  const std::vector<ObjectId> one{2};
  const SolverResult r = LocalSearch(state, one, SolverConfig{});
  EXPECT_EQ(r.clustering.size(), 1u);
  EXPECT_EQ(r.objective, 0.0);
}

TEST(LocalSearchTest, ObjectiveMatchesRecomputeAndIsMonotone) {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const SimilarityState state = RandomState(25, rng);
    SolverConfig config;
    config.seed = trial;
    SolverTrace trace;
    trace.verify_incremental = true;
    const SolverResult r = LocalSearch(state, config, &trace);
    EXPECT_NEAR(r.objective, MaxCorObjective(state, r.clustering), 1e-9);
    EXPECT_LE(trace.max_incremental_drift, 1e-6);
    EXPECT_GT(trace.moves, 0u);
    EXPECT_GT(trace.min_move_gain, 0.0);
  }
}

TEST(LocalSearchTest, NoMovesLeavesGainInfinite) {
  SolverTrace trace;
  // One cluster of mutually similar objects is already a local optimum.
  const SimilarityState state(6, 1.0);
  SolverConfig config;
  config.initial_k = 1;
  LocalSearch(state, config, &trace);
  EXPECT_EQ(trace.moves, 0u);
  EXPECT_TRUE(std::isinf(trace.min_move_gain));
}

TEST(LocalSearchTest, SubsetResultIsPositional) {
  SimilarityState state(6, -1.0);
  state.SetSeed(Edge::Make(5, 1), 1.0);
  const std::vector<ObjectId> objects{5, 3, 1};
  const SolverResult r = LocalSearch(state, objects, SolverConfig{});
  ASSERT_EQ(r.clustering.size(), 3u);
  EXPECT_TRUE(r.clustering.SameCluster(0, 2));
  EXPECT_FALSE(r.clustering.SameCluster(0, 1));
  EXPECT_EQ(r.objective, 1.0);
}

TEST(LocalSearchTest, ThreadCountDoesNotChangeResult) {
  Rng rng(21);
  const SimilarityState state = RandomState(40, rng);
  SolverConfig serial;
  serial.repetitions = 6;
  serial.seed = 99;
  SolverConfig parallel = serial;
  parallel.threads = 3;
  const SolverResult a = LocalSearch(state, serial);
  const SolverResult b = LocalSearch(state, parallel);
  EXPECT_EQ(a.clustering, b.clustering);
  EXPECT_EQ(a.objective, b.objective);
}

TEST(LocalSearchTest, FindsBruteForceOptimumOnSmallInstances) {
  Rng rng(31);
  int hits = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const SimilarityState state = RandomState(6, rng);
    SolverConfig config;
    config.repetitions = 20;
    config.seed = trial;
    const SolverResult r = LocalSearch(state, config);
    const auto opt = BruteForceOptimum(ToDense(state));
    if (r.objective >= opt.best_objective - 1e-9) ++hits;
  }
  EXPECT_GE(hits, 38);
}

TEST(LocalSearchTest, SimilarityReadsGrowQuadraticallyPerSweep) {
  Rng rng(8);
  std::vector<double> per_sweep;
  for (std::size_t n : {50, 100, 200}) {
    const SimilarityState state = RandomState(n, rng);
    SolverConfig config;
    config.repetitions = 1;
    config.initial_k = 5;
    SolverTrace trace;
    LocalSearch(state, config, &trace);
    per_sweep.push_back(static_cast<double>(trace.similarity_reads) /
                        trace.sweeps);
  }
  EXPECT_NEAR(per_sweep[1] / per_sweep[0], 4.0, 0.2);
  EXPECT_NEAR(per_sweep[2] / per_sweep[1], 4.0, 0.2);
}

}  // namespace
}  // namespace acc
