#ifndef ACC_STRATEGIES_H_
#define ACC_STRATEGIES_H_

// Query strategies. Each selects a batch of B distinct edges whose query count
// is still below the cap tau.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "acc/graph.h"
#include "acc/rng.h"

namespace acc {

enum class StrategyKind { kUniform, kUncertainty, kFrequency, kMaxmin, kMaxexp };

std::string_view StrategyName(StrategyKind kind);
std::optional<StrategyKind> ParseStrategyKind(std::string_view name);

inline constexpr std::uint32_t kUnlimitedQueries =
    std::numeric_limits<std::uint32_t>::max();

// Size of the random subset of violating edges that seeds the triangle scan.
struct Subsample {
  enum class Mode {
    kObjects,   // as many edges as there are objects
    kCount,     // a fixed number of edges
    kFraction,  // floor(value * number of violating edges)
  };
  Mode mode = Mode::kObjects;
  double value = 0.0;

  static Subsample Objects() { return {}; }
  static Subsample Count(std::size_t count) {
    return {Mode::kCount, static_cast<double>(count)};
  }
  static Subsample Fraction(double xi) { return {Mode::kFraction, xi}; }

  std::size_t SizeFor(std::size_t num_objects, std::size_t num_violating) const;
  std::string ToString() const;
};

struct StrategyConfig {
  StrategyKind kind = StrategyKind::kMaxexp;
  // Per-slot probability of replacing a chosen edge by a uniform one.
  double epsilon = 0.3;
  // Maximum number of queries per edge.
  std::uint32_t tau = 5;
  // Inverse temperature for maxexp; kInfiniteBeta is allowed.
  double beta = 1.0;
  Subsample subsample;

  void Validate() const;
};

using QueryBatch = std::vector<Edge>;

// Thrown when fewer eligible edges remain than the batch asks for.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Indices of edges queried fewer than tau times, ascending.
std::vector<std::size_t> EligibleEdges(const SimilarityState& state,
                                       std::uint32_t tau);

QueryBatch SelectUniform(const SimilarityState& state, std::size_t batch_size,
                         std::uint32_t tau, Rng& rng);
QueryBatch SelectUncertainty(const SimilarityState& state,
                             std::size_t batch_size, std::uint32_t tau,
                             Rng& rng);
QueryBatch SelectFrequency(const SimilarityState& state, std::size_t batch_size,
                           std::uint32_t tau, Rng& rng);

struct ScoringStats {
  std::size_t violating_edges = 0;
  std::size_t seed_edges = 0;
  std::size_t bad_triangles = 0;
  std::size_t scored_edges = 0;
  // Batch slots filled uniformly because too few edges were scored.
  std::size_t fallback_edges = 0;
};

struct EdgeScore {
  Edge edge;
  double score = 0.0;
};

// Informativeness scores of the triangle strategies, in increasing edge index.
// Every bad triangle reachable from the sampled violating edges credits its
// cheapest edge: maxmin with |sigma(e)|, maxexp with the largest expected
// triangle cost over the triangles selecting that edge.
std::vector<EdgeScore> ScoreTriangleEdges(const SimilarityState& state,
                                          const Clustering& clustering,
                                          const StrategyConfig& config,
                                          Rng& rng,
                                          ScoringStats* stats = nullptr);

// Top-B scored eligible edges; remaining slots are filled uniformly.
QueryBatch SelectMaxminMaxexp(const SimilarityState& state,
                              const Clustering& clustering,
                              std::size_t batch_size,
                              const StrategyConfig& config, Rng& rng,
                              ScoringStats* stats = nullptr);

// Each slot is kept with probability 1 - epsilon; the replaced slots are
// refilled by uniform eligible edges not already kept.
QueryBatch ApplyEpsilonGreedy(const QueryBatch& batch,
                              const SimilarityState& state, double epsilon,
                              std::uint32_t tau, Rng& rng,
                              std::size_t* replaced = nullptr);

// Runs the configured strategy followed by epsilon-greedy replacement.
QueryBatch SelectBatch(const SimilarityState& state,
                       const Clustering& clustering, std::size_t batch_size,
                       const StrategyConfig& config, Rng& rng,
                       ScoringStats* stats = nullptr);

}  // namespace acc

#endif  // ACC_STRATEGIES_H_
