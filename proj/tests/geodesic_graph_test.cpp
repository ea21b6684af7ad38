#include "rme/geodesic_graph.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"

namespace rme {
namespace {

using testing::collinear_fixture;
using testing::semicircle_fixture;

std::set<std::pair<std::size_t, std::size_t>> edge_set(const WeightedGraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> s;
  for (const auto& e : g.edges()) s.insert({e.u, e.v});
  return s;
}

TEST(PairwiseEuclidean, Examples) {
  const std::vector<Point> pts{{0.0, 0.0}, {3.0, 4.0}};
  const auto d = pairwise_euclidean(pts);
  EXPECT_EQ(d(0, 1), 5.0);
  EXPECT_EQ(d(1, 0), 5.0);
  EXPECT_EQ(d(0, 0), 0.0);

  const std::vector<Point> line{{0.0}, {1.0}, {2.5}};
  const auto l = pairwise_euclidean(line);
  EXPECT_EQ(l(0, 1), 1.0);
  EXPECT_EQ(l(0, 2), 2.5);
  EXPECT_EQ(l(1, 2), 1.5);
}

TEST(PairwiseEuclidean, RejectsRaggedInput) {
  const std::vector<Point> pts{{0.0, 0.0}, {3.0}};
  EXPECT_THROW(pairwise_euclidean(pts), DimensionMismatch);
}

TEST(WeightedGraph, NormalizesAndValidatesEdges) {
  const WeightedGraph g(3, {{2, 0, 1.0}, {0, 1, 2.0}});
  EXPECT_EQ(g.edges().front(), (Edge{0, 1, 2.0}));
  EXPECT_EQ(g.edges().back(), (Edge{0, 2, 1.0}));
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_FALSE(g.has_edge(1, 2));
  EXPECT_THROW(WeightedGraph(2, {{0, 0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph(2, {{0, 2, 1.0}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph(2, {{0, 1, -1.0}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph(2, {{0, 1, 1.0}, {1, 0, 1.0}}),
               std::invalid_argument);
}

TEST(EuclideanMst, CollinearMatchesEnumeration) {
  const std::vector<Point> pts{{0.0}, {1.0}, {2.5}};
  const auto mst = euclidean_mst(pairwise_euclidean(pts));
  EXPECT_EQ(mst.edges(), (std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.5}}));

  double best = INFINITY;
  for (const auto& [w, _] : testing::all_spanning_trees(pts)) best = std::min(best, w);
  EXPECT_EQ(best, 2.5);
}

TEST(EuclideanMst, SingleNodeHasNoEdges) {
  const std::vector<Point> pts{{4.0, 2.0}};
  EXPECT_TRUE(euclidean_mst(pairwise_euclidean(pts)).edges().empty());
}

TEST(EuclideanMst, UnitSquareUsesLexicographicTieBreak) {
  const std::vector<Point> pts{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  const auto mst = euclidean_mst(pairwise_euclidean(pts));
  // Unit edges in (u, v) order: (0,1), (0,3), (1,2), (2,3); the first three
  // form a tree.
  EXPECT_EQ(edge_set(mst),
            (std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 3}, {1, 2}}));
  double best = INFINITY;
  for (const auto& [w, _] : testing::all_spanning_trees(pts)) best = std::min(best, w);
  EXPECT_EQ(best, 3.0);
}

TEST(EuclideanMst, MinimalWeightOnRandomSmallSets) {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = testing::random_points(gen, 2 + trial % 4, 3);
    const auto mst = euclidean_mst(pairwise_euclidean(pts));
    ASSERT_EQ(mst.edges().size(), pts.size() - 1);
    ASSERT_TRUE(mst.connected());
    double total = 0.0;
    for (const auto& e : mst.edges()) total += e.weight;
    double best = INFINITY;
    for (const auto& [w, _] : testing::all_spanning_trees(pts)) best = std::min(best, w);
    EXPECT_NEAR(total, best, 1e-12);
  }
}

TEST(BallRadii, Examples) {
  const WeightedGraph chain(3, {{0, 1, 1.0}, {1, 2, 1.5}});
  EXPECT_EQ(ball_radii(chain), (std::vector<double>{1.0, 1.5, 1.5}));
  const WeightedGraph pair(2, {{0, 1, 2.0}});
  EXPECT_EQ(ball_radii(pair), (std::vector<double>{2.0, 2.0}));
  const WeightedGraph star(4, {{0, 1, 1.0}, {0, 2, 2.0}, {0, 3, 3.0}});
  EXPECT_EQ(ball_radii(star), (std::vector<double>{3.0, 1.0, 2.0, 3.0}));
  EXPECT_TRUE(ball_radii(WeightedGraph(1)).empty());
}

TEST(SegmentCovered, SemicircleRejectsEndToEndChord) {
  const auto pts = semicircle_fixture();
  const auto mst = euclidean_mst(pairwise_euclidean(pts));
  // The tree is the arc chain.
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    EXPECT_TRUE(mst.has_edge(k, k + 1));
  }
  const auto radii = ball_radii(mst);
  for (double r : radii) EXPECT_NEAR(r, 10.0 * std::sin(M_PI / 12.0), 1e-12);
  // The chord midpoint is the centre, 5 away from every sample.
  for (const auto& p : pts) EXPECT_NEAR(testing::distance(p, {0.0, 0.0}), 5.0, 1e-12);
  EXPECT_FALSE(segment_covered(0, 6, pts, radii));
  EXPECT_LT(testing::sampled_coverage_margin(pts, radii, 0, 6), 0.0);
}

TEST(SegmentCovered, CollinearFarPairCoveredByInnerBalls) {
  const auto pts = collinear_fixture();
  const auto radii = ball_radii(euclidean_mst(pairwise_euclidean(pts)));
  EXPECT_EQ(radii, (std::vector<double>{1.0, 9.0, 9.0, 1.0}));
  EXPECT_TRUE(segment_covered(0, 3, pts, radii));
}

TEST(SegmentCovered, DegenerateSegmentIsCovered) {
  const std::vector<Point> pts{{1.0, 1.0}, {1.0, 1.0}};
  EXPECT_TRUE(segment_covered(0, 1, pts, std::vector<double>{0.0, 0.0}));
  EXPECT_THROW(segment_covered(0, 0, pts, std::vector<double>{0.0, 0.0}),
               std::invalid_argument);
}

// Every tree edge passes: its endpoint balls reach the far endpoint.
TEST(SegmentCovered, EveryMstEdgeIsCovered) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = trial % 2 == 0
                         ? testing::random_points(gen, 3 + trial % 30, 1 + trial % 7)
                         : testing::degenerate_points(gen, 3 + trial % 30, 1 + trial % 7);
    const auto mst = euclidean_mst(pairwise_euclidean(pts));
    const auto radii = ball_radii(mst);
    for (const auto& e : mst.edges()) {
      ASSERT_TRUE(segment_covered(e.u, e.v, pts, radii))
          << "trial " << trial << " edge " << e.u << "-" << e.v;
    }
  }
}

// Interval sweep against dense sampling, on segments whose coverage margin
// is clearly nonzero.
TEST(SegmentCovered, AgreesWithDenseSampling) {
  std::mt19937_64 gen(99);
  int checked = 0, covered = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto pts = testing::random_points(gen, 12, 2);
    const auto radii = ball_radii(euclidean_mst(pairwise_euclidean(pts)));
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        const double margin = testing::sampled_coverage_margin(pts, radii, a, b);
        if (std::abs(margin) < 1e-3) continue;
        ++checked;
        covered += margin > 0;
        ASSERT_EQ(segment_covered(a, b, pts, radii), margin > 0)
            << "trial " << trial << " pair " << a << "," << b;
      }
    }
  }
  EXPECT_GT(checked, 1000);
  EXPECT_GT(covered, 100);
  EXPECT_LT(covered, checked);
}

TEST(SegmentCovered, LargerRadiiNeverRemoveEdges) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = testing::random_points(gen, 15, 3);
    const auto radii = ball_radii(euclidean_mst(pairwise_euclidean(pts)));
    std::vector<double> bigger = radii;
    std::uniform_real_distribution<double> grow(1.0, 1.5);
    for (double& r : bigger) r *= grow(gen);
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        if (segment_covered(a, b, pts, radii)) {
          ASSERT_TRUE(segment_covered(a, b, pts, bigger));
        }
      }
    }
  }
}

TEST(RobustGraph, CollinearFixtureIsComplete) {
  const auto pts = collinear_fixture();
  const auto g = robust_graph(pts);
  EXPECT_EQ(g.graph.edges().size(), 6u);
  EXPECT_TRUE(g.graph.has_edge(0, 3));
}

TEST(RobustGraph, SemicircleOmitsChord) {
  const auto g = robust_graph(semicircle_fixture());
  EXPECT_FALSE(g.graph.has_edge(0, 6));
  EXPECT_TRUE(g.graph.connected());
}

TEST(RobustGraph, SmallInputs) {
  const std::vector<Point> two{{0.0, 0.0}, {1.0, 1.0}};
  const auto g2 = robust_graph(two);
  ASSERT_EQ(g2.graph.edges().size(), 1u);
  EXPECT_DOUBLE_EQ(g2.graph.edges()[0].weight, std::sqrt(2.0));

  const std::vector<Point> one{{3.0}};
  const auto g1 = robust_graph(one);
  EXPECT_TRUE(g1.graph.edges().empty());
  EXPECT_TRUE(g1.radii.empty());
  const auto d = shortest_path_distances(g1.graph);
  EXPECT_EQ(d.size(), 1u);
  EXPECT_EQ(d(0, 0), 0.0);
}

TEST(RobustGraph, ContainsTreeOnDegenerateInputs) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pts = testing::degenerate_points(gen, 2 + trial % 25, 2);
    const auto g = robust_graph(pts);
    for (const auto& e : g.mst.edges()) ASSERT_TRUE(g.graph.has_edge(e.u, e.v));
    ASSERT_TRUE(g.graph.connected());
  }
}

TEST(RobustGraph, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 gen(8);
  const auto pts = testing::random_points(gen, 40, 5);
  EXPECT_EQ(robust_graph(pts, 1).graph, robust_graph(pts, 4).graph);
  const auto g = robust_graph(pts).graph;
  EXPECT_EQ(shortest_path_distances(g, 1), shortest_path_distances(g, 3));
}

TEST(ShortestPaths, Examples) {
  const auto pts = collinear_fixture();
  const auto d = geodesic_distances(pts);
  EXPECT_EQ(d(0, 3), 11.0);
  EXPECT_EQ(d(1, 3), 10.0);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(d(i, i), 0.0);

  const WeightedGraph chain(3, {{0, 1, 1.0}, {1, 2, 1.5}});
  EXPECT_EQ(shortest_path_distances(chain)(0, 2), 2.5);
  EXPECT_EQ(shortest_path(chain, 0, 2), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(ShortestPaths, DisconnectedGraphThrows) {
  const WeightedGraph g(3, {{0, 1, 1.0}});
  EXPECT_THROW(shortest_path_distances(g), DisconnectedGraph);
  EXPECT_THROW(shortest_path(g, 0, 2), DisconnectedGraph);
}

TEST(ShortestPaths, MatchFloydWarshallOnRandomGraphs) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> weight(0.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) * 2;
    std::vector<Edge> edges;
    std::vector<testing::OracleEdge> oracle;
    std::bernoulli_distribution keep(0.2);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (v == u + 1 || keep(gen)) {
          const double w = weight(gen);
          edges.push_back({u, v, w});
          oracle.push_back({u, v, w});
        }
      }
    }
    const auto d = shortest_path_distances(WeightedGraph(n, edges));
    const auto expected = testing::floyd_warshall(n, oracle);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        ASSERT_NEAR(d(i, j), expected[i][j], 1e-9);
  }
}

TEST(ShortestPaths, GeodesicsAreAMetricDominatingEuclidean) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pts = testing::random_points(gen, 5 + trial, 1 + trial % 10);
    const auto d = geodesic_distances(pts);
    const auto e = pairwise_euclidean(pts);
    const double tol = 1e-9 * d.max_entry();
    for (std::size_t i = 0; i < d.size(); ++i) {
      ASSERT_EQ(d(i, i), 0.0);
      for (std::size_t j = 0; j < d.size(); ++j) {
        ASSERT_EQ(d(i, j), d(j, i));
        ASSERT_GE(d(i, j), e(i, j) - tol);
        for (std::size_t k = 0; k < d.size(); ++k) {
          ASSERT_LE(d(i, k), d(i, j) + d(j, k) + tol);
        }
      }
    }
  }
}

// Rotating and translating every point leaves all constructions unchanged.
TEST(RobustGraph, IsometryEquivariance) {
  std::mt19937_64 gen(17);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dim = 2 + trial % 4;
    const auto pts = testing::random_points(gen, 20, dim);
    // Random orthogonal matrix by Gram-Schmidt.
    std::vector<std::vector<double>> q(dim, std::vector<double>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
      for (auto& c : q[r]) c = normal(gen);
      for (std::size_t p = 0; p < r; ++p) {
        double proj = 0.0;
        for (std::size_t c = 0; c < dim; ++c) proj += q[r][c] * q[p][c];
        for (std::size_t c = 0; c < dim; ++c) q[r][c] -= proj * q[p][c];
      }
      double norm = 0.0;
      for (double c : q[r]) norm += c * c;
      for (double& c : q[r]) c /= std::sqrt(norm);
    }
    std::vector<double> shift(dim);
    for (auto& c : shift) c = normal(gen);
    std::vector<Point> moved(pts.size(), Point(dim, 0.0));
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) moved[i][r] += q[r][c] * pts[i][c];
        moved[i][r] += shift[r];
      }

    const auto a = robust_graph(pts);
    const auto b = robust_graph(moved);
    EXPECT_EQ(edge_set(a.mst), edge_set(b.mst));
    EXPECT_EQ(edge_set(a.graph), edge_set(b.graph));
    const auto da = shortest_path_distances(a.graph);
    const auto db = shortest_path_distances(b.graph);
    const auto ea = pairwise_euclidean(pts);
    const auto eb = pairwise_euclidean(moved);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j) {
        EXPECT_NEAR(da(i, j), db(i, j), 1e-9);
        EXPECT_NEAR(ea(i, j), eb(i, j), 1e-9);
      }
  }
}

TEST(KnnGraph, CollinearK1SplitsIntoTwoComponents) {
  const auto knn = knn_graph(collinear_fixture(), 1);
  EXPECT_EQ(edge_set(knn.graph),
            (std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 3}}));
  EXPECT_EQ(knn.largest_component, (std::vector<std::size_t>{0, 1}));
}

TEST(KnnGraph, FullNeighbourhoodIsComplete) {
  const auto knn = knn_graph(collinear_fixture(), 3);
  EXPECT_EQ(knn.graph.edges().size(), 6u);
  EXPECT_EQ(knn.largest_component.size(), 4u);
}

TEST(KnnGraph, SemicircleK2IsConnected) {
  const auto knn = knn_graph(semicircle_fixture(), 2);
  EXPECT_TRUE(knn.graph.connected());
  EXPECT_EQ(knn.largest_component.size(), 7u);
  for (std::size_t k = 0; k + 1 < 7; ++k) EXPECT_TRUE(knn.graph.has_edge(k, k + 1));
}

TEST(KnnGraph, RejectsBadK) {
  EXPECT_THROW(knn_graph(collinear_fixture(), 4), std::invalid_argument);
  EXPECT_THROW(knn_graph(collinear_fixture(), 0), std::invalid_argument);
}

TEST(Hausdorff, NodesOnManifoldWithoutEdges) {
  std::vector<Point> manifold;
  for (int k = 0; k <= 100; ++k) manifold.push_back({k / 100.0, 0.0});
  const std::vector<Point> nodes{{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}};
  // Farthest manifold sample from any node is 0.25 away.
  EXPECT_DOUBLE_EQ(hausdorff_to_manifold(WeightedGraph(3), nodes, manifold, 0.01),
                   0.25);
}

TEST(Hausdorff, EdgeOnStraightManifold) {
  std::vector<Point> manifold;
  for (int k = 0; k <= 1000; ++k) manifold.push_back({k / 1000.0, 2.0 * k / 1000.0});
  const std::vector<Point> nodes{{0.0, 0.0}, {1.0, 2.0}};
  const double step = 0.01;
  EXPECT_LE(hausdorff_to_manifold(WeightedGraph(2, {{0, 1, std::sqrt(5.0)}}),
                                  nodes, manifold, step),
            step);
  EXPECT_THROW(hausdorff_to_manifold(WeightedGraph(2), nodes, {}, step),
               std::invalid_argument);
}

TEST(EdgeList, SortedRoundTripLines) {
  const WeightedGraph g(3, {{1, 2, 0.1}, {0, 2, 2.5}});
  std::ostringstream out;
  write_edge_list(out, g);
  EXPECT_EQ(out.str(), "0 2 2.5\n1 2 0.1\n");
}

}  // namespace
}  // namespace rme
