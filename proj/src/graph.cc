#include "acc/graph.h"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace acc {

Edge Edge::Make(ObjectId a, ObjectId b) {
  if (a == b) {
    throw std::invalid_argument("edge endpoints must differ, got " +
                                std::to_string(a) + " twice");
  }
  return a > b ? Edge{a, b} : Edge{b, a};
}

Edge EdgeFromIndex(std::size_t index) {
  // Largest u with u(u-1)/2 <= index.
  auto u = static_cast<std::size_t>(
      (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(index))) / 2.0);
  while (u * (u - 1) / 2 > index) --u;
  while ((u + 1) * u / 2 <= index) ++u;
  return Edge{static_cast<ObjectId>(u),
              static_cast<ObjectId>(index - u * (u - 1) / 2)};
}

SimilarityState::SimilarityState(std::size_t num_objects, double seed_value,
                                 bool seed_in_average)
    : num_objects_(num_objects),
      seed_in_average_(seed_in_average),
      sigma_(num_objects < 2 ? 0 : EdgeCount(num_objects), seed_value),
      seed_(sigma_.size(), seed_value),
      query_sum_(sigma_.size(), 0.0),
      query_count_(sigma_.size(), 0) {
  if (num_objects < 2) {
    throw std::invalid_argument("need at least 2 objects, got " +
                                std::to_string(num_objects));
  }
}

void SimilarityState::SetSeed(Edge e, double value) {
  const std::size_t i = EdgeIndex(e);
  if (query_count_[i] != 0) {
    throw std::logic_error("cannot reseed an edge that was already queried");
  }
  seed_[i] = value;
  sigma_[i] = value;
}

void SimilarityState::RecordQuery(Edge e, double response) {
  const std::size_t i = EdgeIndex(e);
  query_sum_[i] += response;
  ++query_count_[i];
  ++total_queries_;
  if (seed_in_average_) {
    sigma_[i] = (seed_[i] + query_sum_[i]) / (query_count_[i] + 1.0);
  } else {
    sigma_[i] = query_sum_[i] / query_count_[i];
  }
}

Clustering::Clustering(std::span<const int> labels) : labels_(labels.size()) {
  std::vector<int> remap;
  int next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int raw = labels[i];
    if (raw < 0) throw std::invalid_argument("cluster labels must be >= 0");
    if (static_cast<std::size_t>(raw) >= remap.size()) {
      remap.resize(static_cast<std::size_t>(raw) + 1, -1);
    }
    if (remap[raw] < 0) remap[raw] = next++;
    labels_[i] = remap[raw];
  }
  num_clusters_ = static_cast<std::size_t>(next);
}

Clustering Clustering::SingleCluster(std::size_t n) {
  return Clustering(std::vector<int>(n, 0));
}

Clustering Clustering::Singletons(std::size_t n) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return Clustering(labels);
}

std::vector<std::vector<std::size_t>> Clustering::clusters() const {
  std::vector<std::vector<std::size_t>> out(num_clusters_);
  for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(i);
  return out;
}

double Violation(const SimilarityState& state, const Clustering& clustering,
                 Edge e) {
  return Violation(state.sigma(e), clustering.SameCluster(e.u, e.v));
}

namespace {

void CheckSubset(std::span<const ObjectId> objects,
                 const Clustering& clustering) {
  if (objects.size() != clustering.size()) {
    throw std::invalid_argument("clustering does not cover the object subset");
  }
}

}  // namespace

double ClusteringCost(const SimilarityState& state,
                      std::span<const ObjectId> objects,
                      const Clustering& clustering) {
  CheckSubset(objects, clustering);
  double cost = 0.0;
  for (std::size_t i = 1; i < objects.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      cost += Violation(state.sigma(objects[i], objects[j]),
                        clustering.SameCluster(i, j));
    }
  }
  return cost;
}

double ClusteringCost(const SimilarityState& state,
                      const Clustering& clustering) {
  return ClusteringCost(state, AllObjects(state.num_objects()), clustering);
}

double MaxCorObjective(const SimilarityState& state,
                       std::span<const ObjectId> objects,
                       const Clustering& clustering) {
  CheckSubset(objects, clustering);
  double objective = 0.0;
  for (std::size_t i = 1; i < objects.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (clustering.SameCluster(i, j)) {
        objective += state.sigma(objects[i], objects[j]);
      }
    }
  }
  return objective;
}

double MaxCorObjective(const SimilarityState& state,
                       const Clustering& clustering) {
  return MaxCorObjective(state, AllObjects(state.num_objects()), clustering);
}

double CostConstant(const SimilarityState& state,
                    std::span<const ObjectId> objects) {
  double total = 0.0;
  for (std::size_t i = 1; i < objects.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double s = state.sigma(objects[i], objects[j]);
      total += std::abs(s) + s;
    }
  }
  return 0.5 * total;
}

double CostConstant(const SimilarityState& state) {
  return CostConstant(state, AllObjects(state.num_objects()));
}

std::vector<Edge> ViolatingEdges(const SimilarityState& state,
                                 const Clustering& clustering) {
  if (clustering.size() != state.num_objects()) {
    throw std::invalid_argument("clustering does not cover all objects");
  }
  std::vector<Edge> out;
  const auto& labels = clustering.labels();
  const std::size_t n = state.num_objects();
  std::size_t index = 0;
  for (std::size_t u = 1; u < n; ++u) {
    for (std::size_t v = 0; v < u; ++v, ++index) {
      if (Violation(state.sigma_at(index), labels[u] == labels[v]) > 0.0) {
        out.push_back(Edge{static_cast<ObjectId>(u), static_cast<ObjectId>(v)});
      }
    }
  }
  return out;
}

std::vector<ObjectId> AllObjects(std::size_t n) {
  std::vector<ObjectId> objects(n);
  std::iota(objects.begin(), objects.end(), ObjectId{0});
  return objects;
}

}  // namespace acc
