#include "acc/triangles.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.h"

namespace acc {
namespace {

using testing::RandomState;
using testing::ScanAllBadTriangles;
using testing::SortedTriple;
using testing::SymbolicPartitionCosts;
using testing::ToDense;

Triangle Make(double s1, double s2, double s3) {
  return Triangle{0, 1, 2, s1, s2, s3};
}

TEST(TriangleTest, BadMeansExactlyOneNegative) {
  EXPECT_TRUE(Make(1, 1, -1).IsBad());
  EXPECT_TRUE(Make(-0.2, 0, 0.3).IsBad());
  EXPECT_FALSE(Make(1, 1, 1).IsBad());
  EXPECT_FALSE(Make(1, -1, -1).IsBad());
  EXPECT_FALSE(Make(-1, -1, -1).IsBad());
  EXPECT_FALSE(Make(0, 0, 0).IsBad());
}

TEST(TriangleTest, MakeTriangleSortsVertices) {
  Rng rng(1);
  const SimilarityState state = RandomState(6, rng);
  const Triangle t = MakeTriangle(state, 5, 1, 3);
  EXPECT_EQ(t.u, 1u);
  EXPECT_EQ(t.v, 3u);
  EXPECT_EQ(t.w, 5u);
  EXPECT_EQ(t.s1, state.sigma(1, 3));
  EXPECT_EQ(t.s2, state.sigma(1, 5));
  EXPECT_EQ(t.s3, state.sigma(3, 5));
  EXPECT_THROW(MakeTriangle(state, 1, 1, 2), std::invalid_argument);
}

TEST(PartitionCostsTest, Examples) {
  EXPECT_EQ(TrianglePartitionCosts(Make(1, 1, -1)),
            (PartitionCosts{1, 3, 1, 1, 2}));
  EXPECT_EQ(TrianglePartitionCosts(Make(-1, -1, -1)),
            (PartitionCosts{3, 1, 1, 1, 0}));
}

TEST(PartitionCostsTest, MatchesSymbolicRowsAndGenericCost) {
  Rng rng(4);
  std::uniform_real_distribution<double> mag(0.001, 1.0);
  for (int pattern = 0; pattern < 8; ++pattern) {
    for (int trial = 0; trial < 100; ++trial) {
      const double s1 = (pattern & 4 ? -1 : 1) * mag(rng);
      const double s2 = (pattern & 2 ? -1 : 1) * mag(rng);
      const double s3 = (pattern & 1 ? -1 : 1) * mag(rng);
      const PartitionCosts costs = TrianglePartitionCosts(Make(s1, s2, s3));
      const auto symbolic = SymbolicPartitionCosts(s1, s2, s3);
      for (int j = 0; j < 5; ++j) EXPECT_EQ(costs[j], symbolic[j]);

      SimilarityState state(3);
      state.SetSeed(Edge::Make(0, 1), s1);
      state.SetSeed(Edge::Make(0, 2), s2);
      state.SetSeed(Edge::Make(1, 2), s3);
      const std::vector<std::vector<int>> partitions{
          {0, 0, 0}, {0, 1, 1}, {0, 1, 0}, {0, 0, 1}, {0, 1, 2}};
      for (int j = 0; j < 5; ++j) {
        EXPECT_NEAR(costs[j], ClusteringCost(state, Clustering(partitions[j])),
                    1e-15);
      }
      const double min_cost = *std::min_element(costs.begin(), costs.end());
      EXPECT_EQ(min_cost > 0.0, IsBadTriangle(s1, s2, s3));
    }
  }
}

TEST(MinTriangleCostTest, Examples) {
  Rng rng(5);
  const Triangle t = Make(1, 0.7, -0.7);
  int second = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto r = MinTriangleCost(t, rng);
    EXPECT_EQ(r.value, 0.7);
    ASSERT_TRUE(r.edge.has_value());
    EXPECT_TRUE(*r.edge == Edge::Make(0, 2) || *r.edge == Edge::Make(1, 2));
    second += *r.edge == Edge::Make(0, 2);
  }
  EXPECT_NEAR(second / 2000.0, 0.5, 5 * std::sqrt(0.25 / 2000));

  const auto good = MinTriangleCost(Make(1, 1, 1), rng);
  EXPECT_EQ(good.value, 0.0);
  EXPECT_FALSE(good.edge.has_value());
}

TEST(MinTriangleCostTest, EqualsMinPartitionCost) {
  Rng rng(6);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  int bad = 0;
  while (bad < 2000) {
    const Triangle t = Make(dist(rng), dist(rng), dist(rng));
    if (!t.IsBad()) continue;
    ++bad;
    const auto costs = TrianglePartitionCosts(t);
    EXPECT_EQ(MinTriangleCost(t, rng).value,
              *std::min_element(costs.begin(), costs.end()));
  }
}

TEST(ProbabilitiesTest, Examples) {
  const Triangle t = Make(1, 1, -1);
  for (double p : ClusteringProbabilities(t, 0.0)) EXPECT_DOUBLE_EQ(p, 0.2);

  const auto inf = ClusteringProbabilities(t, kInfiniteBeta);
  EXPECT_DOUBLE_EQ(inf[0], 1.0 / 3);
  EXPECT_EQ(inf[1], 0.0);
  EXPECT_DOUBLE_EQ(inf[2], 1.0 / 3);
  EXPECT_DOUBLE_EQ(inf[3], 1.0 / 3);
  EXPECT_EQ(inf[4], 0.0);

  const auto one = ClusteringProbabilities(t, 1.0);
  const double e1 = std::exp(-1.0);
  EXPECT_NEAR(one[0], e1 / (3 * e1 + std::exp(-3.0) + std::exp(-2.0)), 1e-12);
  EXPECT_NEAR(one[0], 0.2855, 5e-5);

  EXPECT_THROW(ClusteringProbabilities(t, -1.0), std::invalid_argument);
  EXPECT_THROW(ClusteringProbabilities(t, std::nan("")), std::invalid_argument);
}

TEST(ProbabilitiesTest, SumToOneAndDecreaseWithCost) {
  Rng rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const Triangle t = Make(dist(rng), dist(rng), dist(rng));
    const auto costs = TrianglePartitionCosts(t);
    for (double beta : {0.3, 1.0, 7.0, 1e3}) {
      const auto p = ClusteringProbabilities(costs, beta);
      double total = 0.0;
      for (double x : p) total += x;
      EXPECT_NEAR(total, 1.0, 1e-12);
      for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
          if (costs[i] > costs[j]) EXPECT_LE(p[i], p[j]);
        }
      }
    }
  }
}

TEST(ExpectedCostTest, Examples) {
  EXPECT_NEAR(ExpectedTriangleCost(Make(1, 1, -1), 1.0), 1.18, 0.005);
  EXPECT_DOUBLE_EQ(ExpectedTriangleCost(Make(0.8, 0.5, -0.5), kInfiniteBeta),
                   0.5);
  EXPECT_DOUBLE_EQ(ExpectedTriangleCost(Make(1, 1, -1), 0.0), 1.6);
  EXPECT_GT(ExpectedTriangleCost(Make(1, 1, -0.1), 1.0),
            ExpectedTriangleCost(Make(0.1, 0.1, -0.1), 1.0));
}

TEST(ExpectedCostTest, ExpansionByRoleAndLimits) {
  Rng rng(9);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  int bad = 0;
  while (bad < 1000) {
    const Triangle t = Make(dist(rng), dist(rng), dist(rng));
    if (!t.IsBad()) continue;
    ++bad;
    // The negative edge plays the third role, the positives the first two.
    auto w = t.weights();
    std::size_t neg = 0;
    while (!(w[neg] < 0)) ++neg;
    std::swap(w[neg], w[2]);
    const double a = std::fabs(w[0]), b = std::fabs(w[1]), c = std::fabs(w[2]);
    const Triangle canonical = Make(w[0], w[1], w[2]);
    const auto p = ClusteringProbabilities(canonical, 1.0);
    const double expansion = p[0] * c + p[1] * (a + b + c) + p[2] * a +
                             p[3] * b + p[4] * (a + b);
    EXPECT_NEAR(ExpectedTriangleCost(t, 1.0), expansion, 1e-12);
    EXPECT_NEAR(ExpectedTriangleCost(t, 0.0), (3 * a + 3 * b + 2 * c) / 5,
                1e-12);
    const double min_cost = std::min({a, b, c});
    // The excess over the minimum is at most 4 / (e * beta).
    EXPECT_NEAR(ExpectedTriangleCost(t, 1e7), min_cost, 1e-6);
    EXPECT_DOUBLE_EQ(ExpectedTriangleCost(t, kInfiniteBeta), min_cost);
  }
}

std::set<SortedTriple> Triples(const std::vector<Triangle>& ts) {
  std::set<SortedTriple> out;
  for (const auto& t : ts) {
    EXPECT_TRUE(out.insert({t.u, t.v, t.w}).second) << "duplicate triangle";
  }
  return out;
}

TEST(EnumerateTest, EmptySeedsGiveNothing) {
  Rng rng(10);
  const SimilarityState state = RandomState(8, rng);
  EXPECT_TRUE(EnumerateBadTriangles(state, {}).empty());
}

TEST(EnumerateTest, ConsistentSimilaritiesHaveNoBadTriangles) {
  SimilarityState state(10);
  for (std::size_t i = 0; i < state.num_edges(); ++i) {
    const Edge e = EdgeFromIndex(i);
    state.SetSeed(e, (e.u < 5) == (e.v < 5) ? 1.0 : -1.0);
  }
  std::vector<Edge> all;
  for (std::size_t i = 0; i < state.num_edges(); ++i) {
    all.push_back(EdgeFromIndex(i));
  }
  EXPECT_TRUE(EnumerateBadTriangles(state, all).empty());
}

TEST(EnumerateTest, ViolatingSeedsFindEveryBadTriangle) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const SimilarityState state = RandomState(10, rng);
    std::vector<int> labels(10);
    for (auto& l : labels) l = static_cast<int>(UniformIndex(rng, 3));
    const auto seeds = ViolatingEdges(state, Clustering(labels));
    const auto found = Triples(EnumerateBadTriangles(state, seeds));
    const auto scan = ScanAllBadTriangles(ToDense(state));
    EXPECT_EQ(found, std::set<SortedTriple>(scan.begin(), scan.end()));
  }
}

TEST(EnumerateTest, OnlyTrianglesTouchingSeeds) {
  Rng rng(12);
  const SimilarityState state = RandomState(9, rng);
  const std::vector<Edge> seeds{Edge::Make(3, 1), Edge::Make(7, 3),
                                Edge::Make(3, 1)};
  const auto found = Triples(EnumerateBadTriangles(state, seeds));
  std::set<SortedTriple> expected;
  for (const auto& t : ScanAllBadTriangles(ToDense(state))) {
    const std::set<ObjectId> vs{t.u, t.v, t.w};
    if ((vs.contains(3) && vs.contains(1)) ||
        (vs.contains(7) && vs.contains(3))) {
      expected.insert(t);
    }
  }
  EXPECT_EQ(found, expected);
}

}  // namespace
}  // namespace acc
