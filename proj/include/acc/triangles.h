#ifndef ACC_TRIANGLES_H_
#define ACC_TRIANGLES_H_

// Triangles of objects and the inconsistency measures defined on them.
//
// A triangle (u, v, w) has weights s1 = sigma(u, v), s2 = sigma(u, w) and
// s3 = sigma(v, w). It can be clustered in exactly five ways, always listed in
// this order:
//
//   0: {u, v, w}   1: {u}{v, w}   2: {v}{u, w}   3: {w}{u, v}   4: {u}{v}{w}
//
// A triangle is bad when exactly one weight is negative (zero counts as
// positive). Bad triangles are exactly those where every partition has a
// positive cost, and their cheapest partition costs min |s|.

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "acc/graph.h"
#include "acc/rng.h"

namespace acc {

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

struct Triangle {
  ObjectId u = 0;
  ObjectId v = 1;
  ObjectId w = 2;
  double s1 = 0.0;  // sigma(u, v)
  double s2 = 0.0;  // sigma(u, w)
  double s3 = 0.0;  // sigma(v, w)

  bool IsBad() const;
  std::array<Edge, 3> edges() const {
    return {Edge::Make(u, v), Edge::Make(u, w), Edge::Make(v, w)};
  }
  std::array<double, 3> weights() const { return {s1, s2, s3}; }
};

// Reads the three weights from `state`. Vertices are stored in ascending
// order, so the labelling of s1..s3 is canonical for a vertex set.
Triangle MakeTriangle(const SimilarityState& state, ObjectId a, ObjectId b,
                      ObjectId c);

inline bool IsBadTriangle(double s1, double s2, double s3) {
  return (s1 < 0.0) + (s2 < 0.0) + (s3 < 0.0) == 1;
}

using PartitionCosts = std::array<double, 5>;

// Clustering cost of each of the five partitions.
PartitionCosts TrianglePartitionCosts(const Triangle& t);

struct MinTriangleCostResult {
  double value = 0.0;
  // The cheapest edge of a bad triangle; empty for good triangles.
  std::optional<Edge> edge;
};

// For a bad triangle: min |s| together with a minimizing edge, ties broken
// uniformly at random. For a good triangle: zero and no edge.
MinTriangleCostResult MinTriangleCost(const Triangle& t, Rng& rng);

// Gibbs distribution p_j proportional to exp(-beta * cost_j). beta = 0 is
// uniform; beta = kInfiniteBeta puts equal mass on the cheapest partitions.
std::array<double, 5> ClusteringProbabilities(const PartitionCosts& costs,
                                              double beta);
std::array<double, 5> ClusteringProbabilities(const Triangle& t, double beta);

// Expected partition cost under ClusteringProbabilities.
double ExpectedTriangleCost(const Triangle& t, double beta);

// Visits every bad triangle that contains at least one seed edge, once each.
// A triangle is reported at the first seed edge (in seed order) it contains.
void ForEachBadTriangle(const SimilarityState& state,
                        std::span<const Edge> seeds,
                        const std::function<void(const Triangle&)>& visit);

std::vector<Triangle> EnumerateBadTriangles(const SimilarityState& state,
                                            std::span<const Edge> seeds);

}  // namespace acc

#endif  // ACC_TRIANGLES_H_
