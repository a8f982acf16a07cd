#ifndef ACC_GRAPH_H_
#define ACC_GRAPH_H_

// Objects, edges, the evolving similarity estimate and clusterings over a
// complete graph, together with the violation cost and the equivalent
// max-correlation objective.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace acc {

using ObjectId = std::uint32_t;

// Undirected edge stored in canonical form u > v.
struct Edge {
  ObjectId u = 1;
  ObjectId v = 0;

  // Normalizes any pair of distinct objects to the canonical ordering.
  static Edge Make(ObjectId a, ObjectId b);

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::size_t EdgeCount(std::size_t num_objects) {
  return num_objects * (num_objects - 1) / 2;
}

// Bijection between canonical edges and [0, N(N-1)/2). Edges of larger u come
// later, so the index of (u, v) does not depend on N.
inline std::size_t EdgeIndex(Edge e) {
  return static_cast<std::size_t>(e.u) * (e.u - 1) / 2 + e.v;
}
Edge EdgeFromIndex(std::size_t index);

// The similarity estimate sigma_i over all edges plus the per-edge query
// history. The seed value sigma_0 is kept apart from the oracle responses;
// by default the first real query replaces it, with seed_in_average = true it
// is kept in the average as one pseudo-query.
class SimilarityState {
 public:
  explicit SimilarityState(std::size_t num_objects, double seed_value = 0.0,
                           bool seed_in_average = false);

  std::size_t num_objects() const { return num_objects_; }
  std::size_t num_edges() const { return sigma_.size(); }
  bool seed_in_average() const { return seed_in_average_; }

  double sigma(Edge e) const { return sigma_[EdgeIndex(e)]; }
  double sigma(ObjectId a, ObjectId b) const { return sigma(Edge::Make(a, b)); }
  double sigma_at(std::size_t index) const { return sigma_[index]; }
  std::span<const double> sigma_values() const { return sigma_; }

  double seed(Edge e) const { return seed_[EdgeIndex(e)]; }
  double query_sum(Edge e) const { return query_sum_[EdgeIndex(e)]; }
  std::uint32_t query_count(Edge e) const { return query_count_[EdgeIndex(e)]; }
  std::uint32_t query_count_at(std::size_t index) const {
    return query_count_[index];
  }
  std::uint64_t total_queries() const { return total_queries_; }

  // Sets sigma_0 for an edge that has not been queried yet.
  void SetSeed(Edge e, double value);
  // Appends an oracle response and re-averages the edge.
  void RecordQuery(Edge e, double response);

 private:
  std::size_t num_objects_;
  bool seed_in_average_;
  std::vector<double> sigma_;
  std::vector<double> seed_;
  std::vector<double> query_sum_;
  std::vector<std::uint32_t> query_count_;
  std::uint64_t total_queries_ = 0;
};

// A partition of positions 0..n-1 into non-empty clusters. Labels are kept in
// canonical form: cluster ids are 0..k-1 in order of first appearance, so two
// clusterings compare equal iff they describe the same partition.
class Clustering {
 public:
  Clustering() = default;
  explicit Clustering(std::span<const int> labels);
  explicit Clustering(const std::vector<int>& labels)
      : Clustering(std::span<const int>(labels)) {}

  static Clustering SingleCluster(std::size_t n);
  static Clustering Singletons(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  std::size_t num_clusters() const { return num_clusters_; }
  int label(std::size_t i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }
  bool SameCluster(std::size_t i, std::size_t j) const {
    return labels_[i] == labels_[j];
  }
  std::vector<std::vector<std::size_t>> clusters() const;

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<int> labels_;
  std::size_t num_clusters_ = 0;
};

// Cost contribution of one edge under a clustering of all objects: |sigma| if
// a non-negative edge is cut or a negative edge is kept inside a cluster.
double Violation(const SimilarityState& state, const Clustering& clustering,
                 Edge e);

inline double Violation(double sigma, bool same_cluster) {
  if (sigma >= 0.0) return same_cluster ? 0.0 : sigma;
  return same_cluster ? -sigma : 0.0;
}

// The functions below take an optional subset of objects. The clustering is
// then positional: clustering.label(i) is the cluster of objects[i].
double ClusteringCost(const SimilarityState& state,
                      std::span<const ObjectId> objects,
                      const Clustering& clustering);
double ClusteringCost(const SimilarityState& state,
                      const Clustering& clustering);

double MaxCorObjective(const SimilarityState& state,
                       std::span<const ObjectId> objects,
                       const Clustering& clustering);
double MaxCorObjective(const SimilarityState& state,
                       const Clustering& clustering);

// Clustering-independent term (1/2) sum (|sigma| + sigma) linking the cost and
// the max-correlation objective: cost = constant - objective.
double CostConstant(const SimilarityState& state,
                    std::span<const ObjectId> objects);
double CostConstant(const SimilarityState& state);

// Edges with a positive violation under a clustering of all objects, in
// increasing edge index.
std::vector<Edge> ViolatingEdges(const SimilarityState& state,
                                 const Clustering& clustering);

std::vector<ObjectId> AllObjects(std::size_t n);

}  // namespace acc

#endif  // ACC_GRAPH_H_
