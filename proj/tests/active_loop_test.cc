#include "acc/active_loop.h"

#include <gtest/gtest.h>

#include <cmath>

namespace acc {
namespace {

GroundTruth Blocks(std::size_t n, std::size_t k) {
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i * k / n);
  return GroundTruth(labels);
}

TEST(InitializeSigmaTest, Examples) {
  const SimilarityState singles = InitializeSigma(Clustering::Singletons(6), 0.1);
  for (double s : singles.sigma_values()) EXPECT_EQ(s, -0.1);
  const SimilarityState one = InitializeSigma(Clustering::SingleCluster(6), 0.1);
  for (double s : one.sigma_values()) EXPECT_EQ(s, 0.1);
  EXPECT_EQ(one.total_queries(), 0u);
}

TEST(InitializeSigmaTest, RandomAssignmentPattern) {
  LoopConfig config;
  config.seed = 5;
  const Clustering init = InitialClustering(500, config, {});
  EXPECT_EQ(init.num_clusters(), 10u);
  const SimilarityState state = InitializeSigma(init, 0.1);
  for (std::size_t i = 0; i < state.num_edges(); ++i) {
    const Edge e = EdgeFromIndex(i);
    EXPECT_EQ(state.sigma(e), init.SameCluster(e.u, e.v) ? 0.1 : -0.1);
  }
}

TEST(InitialClusteringTest, ModesAndErrors) {
  LoopConfig config;
  config.init = InitMode::kKmeansClustering;
  EXPECT_THROW(InitialClustering(10, config, {}), std::invalid_argument);
  config.init = InitMode::kExternalClustering;
  EXPECT_THROW(InitialClustering(10, config, {}), std::invalid_argument);
  LoopInputs inputs;
  inputs.external = Clustering::Singletons(10);
  EXPECT_EQ(InitialClustering(10, config, inputs), Clustering::Singletons(10));
}

TEST(DefaultBatchSizeTest, CeilOfEdgesOverThousand) {
  EXPECT_EQ(DefaultBatchSize(500), 125u);
  EXPECT_EQ(DefaultBatchSize(100), 5u);
  EXPECT_EQ(DefaultBatchSize(10), 1u);
}

TEST(ActiveLoopTest, NoiselessUniformFullPassRecoversTruth) {
  const GroundTruth truth = Blocks(20, 3);
  LoopConfig config;
  config.strategy.kind = StrategyKind::kUniform;
  config.strategy.tau = kUnlimitedQueries;
  config.batch_size = EdgeCount(20);
  config.seed = 1;
  const LoopResult r = RunActiveLoop(truth, config);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records.back().ari, 1.0);
  for (std::size_t i = 0; i < r.state.num_edges(); ++i) {
    const Edge e = EdgeFromIndex(i);
    ASSERT_EQ(r.state.query_count(e), 1u);
    EXPECT_EQ(r.state.sigma(e), truth.SigmaStar(e));
  }
}

TEST(ActiveLoopTest, NoiselessMaxexpConvergesBeforeBudget) {
  const GroundTruth truth = Blocks(20, 2);
  LoopConfig config;
  config.seed = 2;
  const LoopResult r = RunActiveLoop(truth, config);
  std::size_t first_perfect = r.records.size();
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    if (r.records[i].ari == 1.0) {
      first_perfect = i;
      break;
    }
  }
  ASSERT_LT(first_perfect, r.records.size());
  EXPECT_LT(r.records[first_perfect].cumulative_queries, EdgeCount(20));
}

TEST(ActiveLoopTest, QueryAccountingAndWarmStart) {
  const GroundTruth truth = Blocks(30, 3);
  LoopConfig config;
  config.batch_size = 5;
  config.max_queries = 103;
  config.noise.gamma = 0.3;
  config.seed = 3;
  const LoopResult r = RunActiveLoop(truth, config);
  ASSERT_EQ(r.records.size(), 22u);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    EXPECT_EQ(r.records[i].iteration, i);
    EXPECT_EQ(r.records[i].cumulative_queries, std::min<std::uint64_t>(5 * i, 103));
    EXPECT_FALSE(r.records[i].early_stop);
    if (i == 0) {
      EXPECT_EQ(r.records[i].initial_k, 30u);
    } else {
      EXPECT_EQ(r.records[i].initial_k, r.records[i - 1].num_clusters);
    }
  }
  EXPECT_EQ(r.state.total_queries(), 103u);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < r.state.num_edges(); ++i) {
    total += r.state.query_count_at(i);
  }
  EXPECT_EQ(total, 103u);
}

TEST(ActiveLoopTest, OneIterationRecordsBatch) {
  const GroundTruth truth = Blocks(12, 2);
  LoopConfig config;
  config.batch_size = 5;
  config.max_queries = 5;
  const LoopResult r = RunActiveLoop(truth, config);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[1].cumulative_queries, 5u);
  EXPECT_EQ(r.state.total_queries(), 5u);
}

TEST(ActiveLoopTest, RecordsMatchFinalState) {
  const GroundTruth truth = Blocks(25, 4);
  LoopConfig config;
  config.noise.gamma = 0.2;
  config.seed = 4;
  const LoopResult r = RunActiveLoop(truth, config);
  const ExperimentRecord& last = r.records.back();
  EXPECT_NEAR(last.cost, ClusteringCost(r.state, r.final_clustering), 1e-9);
  EXPECT_EQ(last.violation_count,
            ViolatingEdges(r.state, r.final_clustering).size());
  EXPECT_EQ(last.num_clusters, r.final_clustering.num_clusters());
}

TEST(ActiveLoopTest, BudgetAboveTauCapIsRejected) {
  LoopConfig config;
  config.strategy.tau = 1;
  config.max_queries = EdgeCount(10) + 1;
  EXPECT_THROW(RunActiveLoop(Blocks(10, 2), config), std::invalid_argument);
}

TEST(ActiveLoopTest, ExhaustedStrategyStopsEarlyWithFlag) {
  const GroundTruth truth = Blocks(8, 2);
  LoopConfig config;
  config.strategy.kind = StrategyKind::kFrequency;
  config.strategy.tau = 1;
  config.batch_size = 5;
  config.max_queries = EdgeCount(8);
  const LoopResult r = RunActiveLoop(truth, config);
  EXPECT_EQ(r.state.total_queries(), EdgeCount(8));
  EXPECT_FALSE(r.records.back().early_stop);

  // With tau = 2 an unqueried edge holds two units of budget but only one
  // batch slot, so near the end fewer edges are eligible than requested.
  config.strategy.kind = StrategyKind::kUniform;
  config.strategy.tau = 2;
  config.batch_size = 10;
  config.max_queries = 2 * EdgeCount(8);
  int early = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    config.seed = seed;
    const LoopResult r2 = RunActiveLoop(truth, config);
    const bool stopped = r2.records.back().early_stop;
    early += stopped;
    EXPECT_EQ(stopped, r2.state.total_queries() < config.max_queries);
    for (std::size_t i = 0; i + 1 < r2.records.size(); ++i) {
      EXPECT_FALSE(r2.records[i].early_stop);
    }
    for (std::size_t i = 0; i < r2.state.num_edges(); ++i) {
      EXPECT_LE(r2.state.query_count_at(i), 2u);
    }
  }
  EXPECT_GT(early, 0);
}

TEST(ActiveLoopTest, ReproducibleForSeed) {
  const GroundTruth truth = Blocks(30, 3);
  LoopConfig config;
  config.noise.gamma = 0.3;
  config.seed = 42;
  const LoopResult a = RunActiveLoop(truth, config);
  const LoopResult b = RunActiveLoop(truth, config);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].ari, b.records[i].ari);
    EXPECT_EQ(a.records[i].cost, b.records[i].cost);
    EXPECT_EQ(a.records[i].num_clusters, b.records[i].num_clusters);
  }
  EXPECT_EQ(a.final_clustering, b.final_clustering);
}

TEST(ActiveLoopTest, KmeansInitUsesFeatures) {
  SyntheticSpec spec;
  spec.n = 40;
  spec.clusters = 4;
  spec.separation = 30.0;
  const Dataset d = GenerateSynthetic(spec);
  LoopConfig config;
  config.init = InitMode::kKmeansClustering;
  config.init_clusters = 4;
  config.max_queries = 1;
  config.batch_size = 1;
  LoopInputs inputs;
  inputs.features = &d.features;
  const LoopResult r = RunActiveLoop(GroundTruth(d.labels), config, inputs);
  EXPECT_EQ(r.records.front().ari, 1.0);
}

}  // namespace
}  // namespace acc
