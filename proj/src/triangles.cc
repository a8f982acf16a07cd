#include "acc/triangles.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acc {

bool Triangle::IsBad() const { return IsBadTriangle(s1, s2, s3); }

Triangle MakeTriangle(const SimilarityState& state, ObjectId a, ObjectId b,
                      ObjectId c) {
  if (a == b || a == c || b == c) {
    throw std::invalid_argument("triangle vertices must be distinct");
  }
  std::array<ObjectId, 3> vs{a, b, c};
  std::sort(vs.begin(), vs.end());
  return Triangle{vs[0],
                  vs[1],
                  vs[2],
                  state.sigma(vs[0], vs[1]),
                  state.sigma(vs[0], vs[2]),
                  state.sigma(vs[1], vs[2])};
}

PartitionCosts TrianglePartitionCosts(const Triangle& t) {
  // Cluster labels of (u, v, w) for each partition.
  static constexpr std::array<std::array<int, 3>, 5> kPartitions{{
      {0, 0, 0},
      {0, 1, 1},
      {0, 1, 0},
      {0, 0, 1},
      {0, 1, 2},
  }};
  PartitionCosts costs{};
  for (std::size_t j = 0; j < kPartitions.size(); ++j) {
    const auto& p = kPartitions[j];
    costs[j] = Violation(t.s1, p[0] == p[1]) + Violation(t.s2, p[0] == p[2]) +
               Violation(t.s3, p[1] == p[2]);
  }
  return costs;
}

MinTriangleCostResult MinTriangleCost(const Triangle& t, Rng& rng) {
  if (!t.IsBad()) return {};
  const auto weights = t.weights();
  const auto edges = t.edges();
  double best = std::abs(weights[0]);
  for (double s : weights) best = std::min(best, std::abs(s));
  std::array<std::size_t, 3> ties{};
  std::size_t num_ties = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(weights[i]) == best) ties[num_ties++] = i;
  }
  const std::size_t pick =
      num_ties == 1 ? ties[0] : ties[UniformIndex(rng, num_ties)];
  return {best, edges[pick]};
}

std::array<double, 5> ClusteringProbabilities(const PartitionCosts& costs,
                                              double beta) {
  if (std::isnan(beta) || beta < 0.0) {
    throw std::invalid_argument("beta must be non-negative");
  }
  std::array<double, 5> p{};
  const double min_cost = *std::min_element(costs.begin(), costs.end());
  if (std::isinf(beta)) {
    const auto ties = std::count(costs.begin(), costs.end(), min_cost);
    for (std::size_t j = 0; j < 5; ++j) {
      p[j] = costs[j] == min_cost ? 1.0 / static_cast<double>(ties) : 0.0;
    }
    return p;
  }
  double total = 0.0;
  for (std::size_t j = 0; j < 5; ++j) {
    p[j] = std::exp(-beta * (costs[j] - min_cost));
    total += p[j];
  }
  for (double& pj : p) pj /= total;
  return p;
}

std::array<double, 5> ClusteringProbabilities(const Triangle& t, double beta) {
  return ClusteringProbabilities(TrianglePartitionCosts(t), beta);
}

double ExpectedTriangleCost(const Triangle& t, double beta) {
  const PartitionCosts costs = TrianglePartitionCosts(t);
  const auto p = ClusteringProbabilities(costs, beta);
  double expected = 0.0;
  for (std::size_t j = 0; j < 5; ++j) {
    if (p[j] > 0.0) expected += p[j] * costs[j];
  }
  return expected;
}

void ForEachBadTriangle(const SimilarityState& state,
                        std::span<const Edge> seeds,
                        const std::function<void(const Triangle&)>& visit) {
  if (seeds.empty()) return;
  const std::size_t n = state.num_objects();
  // Position of each edge in the seed list, or -1.
  std::vector<std::int64_t> position(state.num_edges(), -1);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    auto& slot = position[EdgeIndex(seeds[i])];
    if (slot < 0) slot = static_cast<std::int64_t>(i);
  }
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const Edge e = seeds[i];
    if (position[EdgeIndex(e)] != static_cast<std::int64_t>(i)) continue;
    const double s_uv = state.sigma(e);
    const bool uv_negative = s_uv < 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      const auto w = static_cast<ObjectId>(x);
      if (w == e.u || w == e.v) continue;
      const std::size_t i_uw = EdgeIndex(Edge::Make(e.u, w));
      const std::size_t i_vw = EdgeIndex(Edge::Make(e.v, w));
      const double s_uw = state.sigma_at(i_uw);
      const double s_vw = state.sigma_at(i_vw);
      if (uv_negative + (s_uw < 0.0) + (s_vw < 0.0) != 1) continue;
      // Skip triangles owned by an earlier seed edge.
      const std::int64_t p_uw = position[i_uw];
      const std::int64_t p_vw = position[i_vw];
      const auto here = static_cast<std::int64_t>(i);
      if ((p_uw >= 0 && p_uw < here) || (p_vw >= 0 && p_vw < here)) continue;
      visit(MakeTriangle(state, e.u, e.v, w));
    }
  }
}

std::vector<Triangle> EnumerateBadTriangles(const SimilarityState& state,
                                            std::span<const Edge> seeds) {
  std::vector<Triangle> out;
  ForEachBadTriangle(state, seeds,
                     [&out](const Triangle& t) { out.push_back(t); });
  return out;
}

}  // namespace acc
