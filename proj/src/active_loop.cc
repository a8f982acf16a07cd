#include "acc/active_loop.h"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "acc/metrics.h"

namespace acc {

namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::size_t CountViolations(const SimilarityState& state,
                            const Clustering& clustering) {
  const auto& labels = clustering.labels();
  std::size_t count = 0;
  std::size_t index = 0;
  for (std::size_t u = 1; u < state.num_objects(); ++u) {
    for (std::size_t v = 0; v < u; ++v, ++index) {
      count += Violation(state.sigma_at(index), labels[u] == labels[v]) > 0.0;
    }
  }
  return count;
}

}  // namespace

std::size_t DefaultBatchSize(std::size_t num_objects) {
  return (EdgeCount(num_objects) + 999) / 1000;
}

SimilarityState InitializeSigma(const Clustering& init, double lambda,
                                bool seed_in_average) {
  SimilarityState state(init.size(), -lambda, seed_in_average);
  for (std::size_t u = 1; u < init.size(); ++u) {
    for (std::size_t v = 0; v < u; ++v) {
      if (init.SameCluster(u, v)) {
        state.SetSeed(Edge{static_cast<ObjectId>(u), static_cast<ObjectId>(v)},
                      lambda);
      }
    }
  }
  return state;
}

Clustering InitialClustering(std::size_t num_objects, const LoopConfig& config,
                             const LoopInputs& inputs) {
  Rng rng(MixSeed(config.seed, seed_stream::kInit));
  switch (config.init) {
    case InitMode::kRandomClustering: {
      if (config.init_clusters == 0) {
        throw std::invalid_argument("init_clusters must be positive");
      }
      std::vector<int> labels(num_objects);
      for (int& l : labels) {
        l = static_cast<int>(UniformIndex(rng, config.init_clusters));
      }
      return Clustering(labels);
    }
    case InitMode::kKmeansClustering:
      if (inputs.features == nullptr) {
        throw std::invalid_argument("k-means initialization needs features");
      }
      if (inputs.features->rows != num_objects) {
        throw std::invalid_argument("feature rows do not match object count");
      }
      return KmeansInit(*inputs.features, config.init_clusters, rng);
    case InitMode::kExternalClustering:
      if (!inputs.external || inputs.external->size() != num_objects) {
        throw std::invalid_argument(
            "external initialization needs a clustering of every object");
      }
      return *inputs.external;
  }
  throw std::logic_error("unknown init mode");
}

LoopResult RunActiveLoop(const GroundTruth& truth, const LoopConfig& config,
                         const LoopInputs& inputs) {
  const std::size_t n = truth.num_objects();
  const std::size_t num_edges = EdgeCount(n);
  config.solver.Validate();
  config.strategy.Validate();
  config.noise.Validate();
  const std::size_t batch_size =
      config.batch_size == 0 ? DefaultBatchSize(n) : config.batch_size;
  const std::uint64_t max_queries =
      config.max_queries == 0 ? num_edges : config.max_queries;
  if (config.strategy.tau != kUnlimitedQueries &&
      max_queries > static_cast<std::uint64_t>(config.strategy.tau) * num_edges) {
    throw std::invalid_argument("max_queries exceeds tau * |E|");
  }

  LoopResult result{{},
                    {},
                    InitializeSigma(InitialClustering(n, config, inputs),
                                    config.noise.lambda,
                                    config.seed_in_average)};
  SimilarityState& state = result.state;
  Rng strategy_rng(MixSeed(config.seed, seed_stream::kStrategy));
  Rng oracle_rng(MixSeed(config.seed, seed_stream::kOracle));
  const std::uint64_t solver_seed = MixSeed(config.seed, seed_stream::kSolver);

  SolverConfig solver = config.solver;
  std::uint64_t used = 0;
  for (std::size_t iteration = 0;; ++iteration) {
    solver.seed = MixSeed(solver_seed, iteration);
    const auto solve_start = Clock::now();
    SolverResult solved = LocalSearch(state, solver);
    ExperimentRecord record;
    record.solver_ms = MillisSince(solve_start);
    record.iteration = iteration;
    record.cumulative_queries = used;
    record.initial_k = solver.initial_k == 0 ? n : solver.initial_k;
    record.ari = AdjustedRandIndex(solved.clustering, truth.clustering());
    record.ami = AdjustedMutualInformation(solved.clustering, truth.clustering());
    record.cost = ClusteringCost(state, solved.clustering);
    record.num_clusters = solved.clustering.num_clusters();
    record.violation_count = CountViolations(state, solved.clustering);

    if (used >= max_queries) {
      result.records.push_back(record);
      result.final_clustering = std::move(solved.clustering);
      break;
    }

    const std::size_t request = static_cast<std::size_t>(
        std::min<std::uint64_t>(batch_size, max_queries - used));
    const auto strategy_start = Clock::now();
    QueryBatch batch;
    try {
      batch = SelectBatch(state, solved.clustering, request, config.strategy,
                          strategy_rng);
    } catch (const BudgetExhausted&) {
      batch.clear();
    }
    record.strategy_ms = MillisSince(strategy_start);
    if (batch.empty()) {
      record.early_stop = true;
      result.records.push_back(record);
      result.final_clustering = std::move(solved.clustering);
      break;
    }
    result.records.push_back(record);

    for (const Edge& e : batch) {
      state.RecordQuery(e, QueryOracle(truth, config.noise, e, oracle_rng));
    }
    used += batch.size();
    solver.initial_k = solved.clustering.num_clusters();
  }
  return result;
}

}  // namespace acc
