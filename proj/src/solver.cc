#include "acc/solver.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "acc/rng.h"

namespace acc {

void SolverConfig::Validate() const {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (!(stop_threshold > 0.0)) {
    throw std::invalid_argument("stop_threshold must be > 0");
  }
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

double ClusterSimilarity(const SimilarityState& state,
                         std::span<const ObjectId> objects,
                         const Clustering& clustering, std::size_t u,
                         int cluster) {
  double total = 0.0;
  for (std::size_t v = 0; v < objects.size(); ++v) {
    if (v != u && clustering.label(v) == cluster) {
      total += state.sigma(objects[u], objects[v]);
    }
  }
  return total;
}

namespace {

// Dense row-major copy of the similarities among the subset, so that scoring
// an object reads one contiguous row.
std::vector<double> DenseSimilarities(const SimilarityState& state,
                                      std::span<const ObjectId> objects) {
  const std::size_t m = objects.size();
  std::vector<double> dense(m * m, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double s = state.sigma(objects[i], objects[j]);
      dense[i * m + j] = s;
      dense[j * m + i] = s;
    }
  }
  return dense;
}

double FullObjective(const std::vector<double>& dense, std::size_t m,
                     const std::vector<int>& labels) {
  double objective = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    const double* row = dense.data() + i * m;
    for (std::size_t j = 0; j < i; ++j) {
      if (labels[i] == labels[j]) objective += row[j];
    }
  }
  return objective;
}

struct RestartResult {
  std::vector<int> labels;
  double objective = 0.0;
  SolverTrace trace;
};

class Restart {
 public:
  Restart(const std::vector<double>& dense, std::size_t m, std::size_t k,
          double eta, std::uint64_t seed, bool verify)
      : dense_(dense), m_(m), k_(k), eta_(eta), rng_(seed), verify_(verify) {}

  RestartResult Run() {
    RestartResult result;
    result.trace.min_move_gain = std::numeric_limits<double>::infinity();
    labels_.assign(m_, 0);
    sizes_.assign(m_, 0);
    scores_.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      labels_[i] = static_cast<int>(UniformIndex(rng_, k_));
      ++sizes_[labels_[i]];
    }
    active_.clear();
    for (std::size_t c = 0; c < m_; ++c) {
      if (sizes_[c] > 0) active_.push_back(static_cast<int>(c));
    }

    std::vector<std::size_t> order(m_);
    std::iota(order.begin(), order.end(), std::size_t{0});

    double delta = FullObjective(dense_, m_, labels_);
    double delta_old = delta - 1.0;
    while (std::abs(delta - delta_old) > eta_) {
      delta_old = delta;
      std::shuffle(order.begin(), order.end(), rng_);
      for (std::size_t u : order) Visit(u, delta, result.trace);
      ++result.trace.sweeps;
      result.trace.sweep_objectives.push_back(delta);
      if (verify_) {
        const double drift =
            std::abs(delta - FullObjective(dense_, m_, labels_));
        result.trace.max_incremental_drift =
            std::max(result.trace.max_incremental_drift, drift);
      }
    }
    result.labels = labels_;
    result.objective = delta;
    return result;
  }

 private:
  void Visit(std::size_t u, double& delta, SolverTrace& trace) {
    for (int c : active_) scores_[c] = 0.0;
    const double* row = dense_.data() + u * m_;
    for (std::size_t v = 0; v < m_; ++v) {
      if (v != u) scores_[labels_[v]] += row[v];
    }
    trace.similarity_reads += m_ - 1;

    // Lowest id wins ties, except that the current cluster wins any tie.
    const int current = labels_[u];
    int best = active_.front();
    for (int c : active_) {
      if (scores_[c] > scores_[best]) best = c;
    }
    if (scores_[best] == scores_[current]) best = current;

    const double best_score = scores_[best];
    const double current_score = scores_[current];
    if (best_score < 0.0) {
      // Splitting off a singleton is a no-op if u is already alone.
      if (sizes_[current] == 1) return;
      const int fresh = FreeClusterId();
      Move(u, fresh);
      delta -= current_score;
      Record(trace, -current_score);
    } else if (best != current) {
      Move(u, best);
      delta += best_score - current_score;
      Record(trace, best_score - current_score);
    }
  }

  static void Record(SolverTrace& trace, double gain) {
    ++trace.moves;
    trace.min_move_gain = std::min(trace.min_move_gain, gain);
  }

  int FreeClusterId() const {
    for (std::size_t c = 0; c < m_; ++c) {
      if (sizes_[c] == 0) return static_cast<int>(c);
    }
    throw std::logic_error("no free cluster id");
  }

  void Move(std::size_t u, int to) {
    const int from = labels_[u];
    labels_[u] = to;
    if (--sizes_[from] == 0) {
      active_.erase(std::find(active_.begin(), active_.end(), from));
    }
    if (sizes_[to]++ == 0) {
      active_.insert(std::lower_bound(active_.begin(), active_.end(), to), to);
      scores_[to] = 0.0;
    }
  }

  const std::vector<double>& dense_;
  std::size_t m_;
  std::size_t k_;
  double eta_;
  Rng rng_;
  bool verify_;
  std::vector<int> labels_;
  std::vector<int> sizes_;
  std::vector<double> scores_;
  // Ids of non-empty clusters, ascending.
  std::vector<int> active_;
};

}  // namespace

SolverResult LocalSearch(const SimilarityState& state,
                         std::span<const ObjectId> objects,
                         const SolverConfig& config, SolverTrace* trace) {
  config.Validate();
  const std::size_t m = objects.size();
  if (m == 0) throw std::invalid_argument("cannot cluster an empty object set");
  if (m == 1) return {Clustering::SingleCluster(1), 0.0};

  const std::size_t k =
      config.initial_k == 0 ? m : std::min(config.initial_k, m);
  const std::vector<double> dense = DenseSimilarities(state, objects);
  const bool verify = trace != nullptr && trace->verify_incremental;

  const auto reps = static_cast<std::size_t>(config.repetitions);
  std::vector<RestartResult> results(reps);
  auto run_one = [&](std::size_t r) {
    Restart restart(dense, m, k, config.stop_threshold, config.seed + r,
                    verify);
    results[r] = restart.Run();
  };

  const auto threads =
      std::min(reps, static_cast<std::size_t>(config.threads));
  if (threads <= 1) {
    for (std::size_t r = 0; r < reps; ++r) run_one(r);
  } else {
    std::vector<std::future<void>> pending;
    for (std::size_t t = 0; t < threads; ++t) {
      pending.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t r = t; r < reps; r += threads) run_one(r);
      }));
    }
    for (auto& f : pending) f.get();
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < reps; ++r) {
    if (results[r].objective > results[best].objective) best = r;
  }

  if (trace != nullptr) {
    for (const auto& r : results) {
      trace->sweeps += r.trace.sweeps;
      trace->moves += r.trace.moves;
      trace->similarity_reads += r.trace.similarity_reads;
      if (r.trace.moves > 0) {
        trace->min_move_gain =
            std::min(trace->min_move_gain, r.trace.min_move_gain);
      }
      trace->max_incremental_drift =
          std::max(trace->max_incremental_drift, r.trace.max_incremental_drift);
      trace->sweep_objectives.insert(trace->sweep_objectives.end(),
                                     r.trace.sweep_objectives.begin(),
                                     r.trace.sweep_objectives.end());
    }
  }
  return {Clustering(results[best].labels), results[best].objective};
}

SolverResult LocalSearch(const SimilarityState& state,
                         const SolverConfig& config, SolverTrace* trace) {
  const std::vector<ObjectId> objects = AllObjects(state.num_objects());
  return LocalSearch(state, objects, config, trace);
}

}  // namespace acc
