#ifndef ACC_SOLVER_H_
#define ACC_SOLVER_H_

// Local search for correlation clustering with a dynamic number of clusters.
// Objects are greedily reassigned to the cluster with the largest summed
// similarity, or split off into a new singleton when every cluster scores
// negative; emptied clusters disappear. Each object visit costs O(N + k).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "acc/graph.h"

namespace acc {

struct SolverConfig {
  // Number of random restarts; the best restart by objective wins.
  int repetitions = 3;
  // A restart stops once a full sweep changes the objective by at most this.
  double stop_threshold = 0x1p-52;
  // Clusters in the random initial assignment, capped at the number of
  // objects. Zero means one cluster per object.
  std::size_t initial_k = 0;
  std::uint64_t seed = 0;
  // Restarts are run on up to this many threads. Results do not depend on it.
  int threads = 1;

  void Validate() const;
};

// Optional instrumentation, filled across all restarts.
struct SolverTrace {
  // When set, the objective is recomputed from scratch after every sweep and
  // compared with the incrementally maintained value.
  bool verify_incremental = false;

  std::size_t sweeps = 0;
  std::size_t moves = 0;
  // Number of sigma reads made while scoring clusters.
  std::uint64_t similarity_reads = 0;
  // Smallest objective change of any accepted move. Non-negative means every
  // restart was monotone. Stays infinite when nothing moved.
  double min_move_gain = std::numeric_limits<double>::infinity();
  // Largest |incremental - recomputed| seen at a sweep end.
  double max_incremental_drift = 0.0;
  // Objective at the end of every sweep, all restarts concatenated.
  std::vector<double> sweep_objectives;
};

struct SolverResult {
  Clustering clustering;
  double objective = 0.0;
};

// S_c(u): sum of sigma(u, v) over the members v != u of cluster c. The
// clustering is positional over `objects`; `u` is a position.
double ClusterSimilarity(const SimilarityState& state,
                         std::span<const ObjectId> objects,
                         const Clustering& clustering, std::size_t u,
                         int cluster);

SolverResult LocalSearch(const SimilarityState& state,
                         std::span<const ObjectId> objects,
                         const SolverConfig& config,
                         SolverTrace* trace = nullptr);

SolverResult LocalSearch(const SimilarityState& state,
                         const SolverConfig& config,
                         SolverTrace* trace = nullptr);

}  // namespace acc

#endif  // ACC_SOLVER_H_
