#include "acc/strategies.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "acc/triangles.h"

namespace acc {

std::string_view StrategyName(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kUniform:
      return "uniform";
    case StrategyKind::kUncertainty:
      return "uncertainty";
    case StrategyKind::kFrequency:
      return "frequency";
    case StrategyKind::kMaxmin:
      return "maxmin";
    case StrategyKind::kMaxexp:
      return "maxexp";
  }
  return "unknown";
}

std::optional<StrategyKind> ParseStrategyKind(std::string_view name) {
  for (auto kind : {StrategyKind::kUniform, StrategyKind::kUncertainty,
                    StrategyKind::kFrequency, StrategyKind::kMaxmin,
                    StrategyKind::kMaxexp}) {
    if (StrategyName(kind) == name) return kind;
  }
  return std::nullopt;
}

std::size_t Subsample::SizeFor(std::size_t num_objects,
                               std::size_t num_violating) const {
  switch (mode) {
    case Mode::kObjects:
      return std::min(num_objects, num_violating);
    case Mode::kCount:
      return std::min(static_cast<std::size_t>(value), num_violating);
    case Mode::kFraction:
      return std::min(num_violating, static_cast<std::size_t>(std::floor(
                                         value * num_violating)));
  }
  return 0;
}

std::string Subsample::ToString() const {
  std::ostringstream out;
  switch (mode) {
    case Mode::kObjects:
      return "n";
    case Mode::kCount:
      out << "count:" << static_cast<std::size_t>(value);
      break;
    case Mode::kFraction:
      out << value;
      break;
  }
  return out.str();
}

void StrategyConfig::Validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (std::isnan(beta) || beta < 0.0) {
    throw std::invalid_argument("beta must be non-negative");
  }
  if (subsample.mode == Subsample::Mode::kFraction &&
      !(subsample.value >= 0.0 && subsample.value <= 1.0)) {
    throw std::invalid_argument("xi must lie in [0, 1]");
  }
  if (subsample.mode == Subsample::Mode::kCount && !(subsample.value >= 0.0)) {
    throw std::invalid_argument("subsample count must be non-negative");
  }
}

std::vector<std::size_t> EligibleEdges(const SimilarityState& state,
                                       std::uint32_t tau) {
  std::vector<std::size_t> out;
  out.reserve(state.num_edges());
  for (std::size_t i = 0; i < state.num_edges(); ++i) {
    if (state.query_count_at(i) < tau) out.push_back(i);
  }
  return out;
}

namespace {

void RequireEligible(std::size_t available, std::size_t batch_size) {
  if (available < batch_size) {
    throw BudgetExhausted("only " + std::to_string(available) +
                          " eligible edges remain, batch needs " +
                          std::to_string(batch_size));
  }
}

// Moves a uniform sample of `count` elements to the front of `pool`.
void PartialShuffle(std::vector<std::size_t>& pool, std::size_t count,
                    Rng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + UniformIndex(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
}

QueryBatch ToBatch(std::span<const std::size_t> indices) {
  QueryBatch batch;
  batch.reserve(indices.size());
  for (std::size_t i : indices) batch.push_back(EdgeFromIndex(i));
  return batch;
}

// The batch_size eligible edges with the smallest key, random among ties.
template <typename KeyFn>
QueryBatch SelectSmallest(const SimilarityState& state, std::size_t batch_size,
                          std::uint32_t tau, Rng& rng, KeyFn key) {
  const std::vector<std::size_t> eligible = EligibleEdges(state, tau);
  RequireEligible(eligible.size(), batch_size);
  struct Keyed {
    double key;
    std::uint64_t tie;
    std::size_t index;
    bool operator<(const Keyed& o) const {
      return key != o.key ? key < o.key : tie < o.tie;
    }
  };
  std::vector<Keyed> keyed;
  keyed.reserve(eligible.size());
  for (std::size_t i : eligible) keyed.push_back({key(i), rng(), i});
  if (batch_size < keyed.size()) {
    std::nth_element(keyed.begin(), keyed.begin() + batch_size, keyed.end());
  }
  keyed.resize(batch_size);
  std::sort(keyed.begin(), keyed.end());
  QueryBatch batch;
  batch.reserve(batch_size);
  for (const auto& k : keyed) batch.push_back(EdgeFromIndex(k.index));
  return batch;
}

}  // namespace

QueryBatch SelectUniform(const SimilarityState& state, std::size_t batch_size,
                         std::uint32_t tau, Rng& rng) {
  std::vector<std::size_t> eligible = EligibleEdges(state, tau);
  RequireEligible(eligible.size(), batch_size);
  PartialShuffle(eligible, batch_size, rng);
  return ToBatch(std::span(eligible).first(batch_size));
}

QueryBatch SelectUncertainty(const SimilarityState& state,
                             std::size_t batch_size, std::uint32_t tau,
                             Rng& rng) {
  return SelectSmallest(state, batch_size, tau, rng, [&](std::size_t i) {
    return std::abs(state.sigma_at(i));
  });
}

QueryBatch SelectFrequency(const SimilarityState& state, std::size_t batch_size,
                           std::uint32_t tau, Rng& rng) {
  return SelectSmallest(state, batch_size, tau, rng, [&](std::size_t i) {
    return static_cast<double>(state.query_count_at(i));
  });
}

std::vector<EdgeScore> ScoreTriangleEdges(const SimilarityState& state,
                                          const Clustering& clustering,
                                          const StrategyConfig& config,
                                          Rng& rng, ScoringStats* stats) {
  const bool maxexp = config.kind == StrategyKind::kMaxexp;
  if (!maxexp && config.kind != StrategyKind::kMaxmin) {
    throw std::invalid_argument("triangle scoring needs maxmin or maxexp");
  }
  std::vector<Edge> violating = ViolatingEdges(state, clustering);
  const std::size_t sample_size =
      config.subsample.SizeFor(state.num_objects(), violating.size());
  for (std::size_t i = 0; i < sample_size; ++i) {
    const std::size_t j = i + UniformIndex(rng, violating.size() - i);
    std::swap(violating[i], violating[j]);
  }
  const std::span<const Edge> seeds = std::span(violating).first(sample_size);

  std::vector<double> score(state.num_edges(), 0.0);
  std::vector<char> scored(state.num_edges(), 0);
  std::vector<std::size_t> touched;
  std::size_t bad = 0;
  ForEachBadTriangle(state, seeds, [&](const Triangle& t) {
    ++bad;
    const MinTriangleCostResult min = MinTriangleCost(t, rng);
    const std::size_t e = EdgeIndex(*min.edge);
    if (!scored[e]) {
      scored[e] = 1;
      touched.push_back(e);
    }
    if (maxexp) {
      score[e] = std::max(ExpectedTriangleCost(t, config.beta), score[e]);
    } else {
      score[e] = min.value;
    }
  });

  std::sort(touched.begin(), touched.end());
  std::vector<EdgeScore> out;
  out.reserve(touched.size());
  for (std::size_t e : touched) out.push_back({EdgeFromIndex(e), score[e]});
  if (stats != nullptr) {
    stats->violating_edges = violating.size();
    stats->seed_edges = sample_size;
    stats->bad_triangles = bad;
    stats->scored_edges = out.size();
  }
  return out;
}

QueryBatch SelectMaxminMaxexp(const SimilarityState& state,
                              const Clustering& clustering,
                              std::size_t batch_size,
                              const StrategyConfig& config, Rng& rng,
                              ScoringStats* stats) {
  std::vector<EdgeScore> scores =
      ScoreTriangleEdges(state, clustering, config, rng, stats);
  std::erase_if(scores, [&](const EdgeScore& s) {
    return state.query_count(s.edge) >= config.tau;
  });
  std::shuffle(scores.begin(), scores.end(), rng);
  std::stable_sort(scores.begin(), scores.end(),
                   [](const EdgeScore& a, const EdgeScore& b) {
                     return a.score > b.score;
                   });

  QueryBatch batch;
  batch.reserve(batch_size);
  for (std::size_t i = 0; i < scores.size() && batch.size() < batch_size; ++i) {
    batch.push_back(scores[i].edge);
  }
  std::size_t fallback = 0;
  if (batch.size() < batch_size) {
    std::unordered_set<std::size_t> chosen;
    for (const Edge& e : batch) chosen.insert(EdgeIndex(e));
    std::vector<std::size_t> pool = EligibleEdges(state, config.tau);
    if (pool.empty()) throw BudgetExhausted("no eligible edge remains");
    std::erase_if(pool, [&](std::size_t i) { return chosen.contains(i); });
    fallback = std::min(batch_size - batch.size(), pool.size());
    PartialShuffle(pool, fallback, rng);
    for (std::size_t i = 0; i < fallback; ++i) {
      batch.push_back(EdgeFromIndex(pool[i]));
    }
  }
  if (stats != nullptr) stats->fallback_edges = fallback;
  return batch;
}

QueryBatch ApplyEpsilonGreedy(const QueryBatch& batch,
                              const SimilarityState& state, double epsilon,
                              std::uint32_t tau, Rng& rng,
                              std::size_t* replaced) {
  if (replaced != nullptr) *replaced = 0;
  if (epsilon <= 0.0 || batch.empty()) return batch;

  std::vector<bool> replace(batch.size());
  std::unordered_set<std::size_t> kept;
  std::size_t num_replaced = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    replace[i] = UniformUnit(rng) < epsilon;
    if (replace[i]) {
      ++num_replaced;
    } else {
      kept.insert(EdgeIndex(batch[i]));
    }
  }
  if (replaced != nullptr) *replaced = num_replaced;
  if (num_replaced == 0) return batch;

  std::vector<std::size_t> pool = EligibleEdges(state, tau);
  std::erase_if(pool, [&](std::size_t i) { return kept.contains(i); });
  RequireEligible(pool.size(), num_replaced);
  PartialShuffle(pool, num_replaced, rng);

  QueryBatch out = batch;
  std::size_t next = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (replace[i]) out[i] = EdgeFromIndex(pool[next++]);
  }
  return out;
}

QueryBatch SelectBatch(const SimilarityState& state,
                       const Clustering& clustering, std::size_t batch_size,
                       const StrategyConfig& config, Rng& rng,
                       ScoringStats* stats) {
  switch (config.kind) {
    case StrategyKind::kUniform:
      return SelectUniform(state, batch_size, config.tau, rng);
    case StrategyKind::kUncertainty:
      return SelectUncertainty(state, batch_size, config.tau, rng);
    case StrategyKind::kFrequency:
      return SelectFrequency(state, batch_size, config.tau, rng);
    case StrategyKind::kMaxmin:
    case StrategyKind::kMaxexp: {
      const QueryBatch ranked = SelectMaxminMaxexp(state, clustering,
                                                   batch_size, config, rng,
                                                   stats);
      return ApplyEpsilonGreedy(ranked, state, config.epsilon, config.tau, rng);
    }
  }
  throw std::logic_error("unknown strategy");
}

}  // namespace acc
