#ifndef ACC_ACTIVE_LOOP_H_
#define ACC_ACTIVE_LOOP_H_

// The active clustering loop: cluster the current estimate, pick a batch of
// edges, query the oracle, average the answers in, repeat until the query
// budget is spent.

#include <cstdint>
#include <optional>
#include <vector>

#include "acc/datasets.h"
#include "acc/graph.h"
#include "acc/oracle.h"
#include "acc/solver.h"
#include "acc/strategies.h"

namespace acc {

enum class InitMode { kRandomClustering, kKmeansClustering, kExternalClustering };

struct LoopConfig {
  // Zero means ceil(|E| / 1000).
  std::size_t batch_size = 0;
  // Total oracle calls before stopping. Zero means |E|.
  std::uint64_t max_queries = 0;
  // initial_k applies to the first solve only; later solves start from the
  // previous cluster count. seed is ignored, solver seeds derive from `seed`.
  SolverConfig solver;
  StrategyConfig strategy;
  NoiseModel noise;
  InitMode init = InitMode::kRandomClustering;
  // Clusters of the random (or k-means) initial clustering.
  std::size_t init_clusters = 10;
  bool seed_in_average = false;
  std::uint64_t seed = 0;
};

struct LoopInputs {
  // Required for kKmeansClustering.
  const Matrix* features = nullptr;
  // Required for kExternalClustering.
  std::optional<Clustering> external;
};

struct ExperimentRecord {
  std::size_t iteration = 0;
  // Oracle calls made before this iteration's clustering was computed.
  std::uint64_t cumulative_queries = 0;
  double ari = 0.0;
  double ami = 0.0;
  // Correlation clustering cost of the clustering under the current estimate.
  double cost = 0.0;
  std::size_t num_clusters = 0;
  std::size_t initial_k = 0;
  double solver_ms = 0.0;
  double strategy_ms = 0.0;
  std::size_t violation_count = 0;
  // Set on the last record when the strategy ran out of eligible edges.
  bool early_stop = false;
};

struct LoopResult {
  std::vector<ExperimentRecord> records;
  Clustering final_clustering;
  SimilarityState state;
};

std::size_t DefaultBatchSize(std::size_t num_objects);

// sigma_0 = +lambda inside clusters of `init`, -lambda across them.
SimilarityState InitializeSigma(const Clustering& init, double lambda,
                                bool seed_in_average = false);

// The initial clustering for a config, drawn from its own seed stream.
Clustering InitialClustering(std::size_t num_objects, const LoopConfig& config,
                             const LoopInputs& inputs);

LoopResult RunActiveLoop(const GroundTruth& truth, const LoopConfig& config,
                         const LoopInputs& inputs = {});

// Seed streams derived from LoopConfig::seed.
namespace seed_stream {
inline constexpr std::uint64_t kInit = 0;
inline constexpr std::uint64_t kStrategy = 1;
inline constexpr std::uint64_t kOracle = 2;
inline constexpr std::uint64_t kSolver = 3;
inline constexpr std::uint64_t kBaseline = 4;
}  // namespace seed_stream

}  // namespace acc

#endif  // ACC_ACTIVE_LOOP_H_
