#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "rme/curve_model.hpp"

namespace rme {

/// A point of R^m. Curves enter the graph layer as their value vectors.
using Point = std::vector<double>;

class DisconnectedGraph : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense symmetric n x n matrix of nonnegative reals, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, double fill = 0.0)
      : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }
  double max_entry() const noexcept;

  friend bool operator==(const DistanceMatrix&,
                         const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Approximated geodesic distances between all pairs of nodes.
using GeodesicMatrix = DistanceMatrix;

struct Edge {
  std::size_t u;  // u < v
  std::size_t v;
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph on nodes 0..n-1. Edges are kept sorted by
/// (u, v) with u < v and no duplicates.
class WeightedGraph {
 public:
  explicit WeightedGraph(std::size_t node_count = 0,
                         std::vector<Edge> edges = {});

  std::size_t node_count() const noexcept { return node_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool has_edge(std::size_t a, std::size_t b) const;

  struct Neighbor {
    std::size_t node;
    double weight;
  };
  /// Neighbor lists in ascending node order.
  std::vector<std::vector<Neighbor>> adjacency() const;

  /// Connected components, each sorted ascending, ordered by smallest member.
  std::vector<std::vector<std::size_t>> components() const;
  bool connected() const { return components().size() <= 1; }

  /// Subgraph induced by `nodes` (ascending), relabelled 0..k-1.
  WeightedGraph induced(std::span<const std::size_t> nodes) const;

  friend bool operator==(const WeightedGraph&,
                         const WeightedGraph&) = default;

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// All pairwise l2 distances. Throws DimensionMismatch on ragged input.
DistanceMatrix pairwise_euclidean(std::span<const Point> points);

/// Minimum spanning tree of the complete graph described by `dist`, built
/// with dense Prim. Equal weights are ordered by the lexicographic (u, v)
/// pair, which makes the tree unique.
WeightedGraph euclidean_mst(const DistanceMatrix& dist);

/// Ball radius of each node: the largest tree edge incident to it.
/// Empty for a single node.
std::vector<double> ball_radii(const WeightedGraph& mst);

/// Relative gap allowed between consecutive covering intervals.
inline constexpr double kCoverageTolerance = 1e-9;

/// Whether the segment from points[a] to points[b] lies in the union of the
/// closed balls B(points[k], radii[k]).
bool segment_covered(std::size_t a, std::size_t b,
                     std::span<const Point> points,
                     std::span<const double> radii);

struct RobustGraph {
  WeightedGraph graph;
  WeightedGraph mst;
  std::vector<double> radii;
};

/// Tree plus every pair whose joining segment is covered by the balls.
RobustGraph robust_graph(std::span<const Point> points, unsigned threads = 1);

/// Shortest path lengths via one binary-heap Dijkstra per source. Entry
/// (i, j), i < j, is the path length accumulated from i; (j, i) mirrors it.
/// Throws DisconnectedGraph if some pair is unreachable.
GeodesicMatrix shortest_path_distances(const WeightedGraph& graph,
                                       unsigned threads = 1);

/// Node sequence of one shortest path from `source` to `target`.
std::vector<std::size_t> shortest_path(const WeightedGraph& graph,
                                       std::size_t source, std::size_t target);

/// Full pipeline: robust graph then shortest paths.
GeodesicMatrix geodesic_distances(std::span<const Point> points,
                                  unsigned threads = 1);

struct KnnGraph {
  WeightedGraph graph;
  std::vector<std::size_t> largest_component;
};

/// Symmetrized K-nearest-neighbour graph (ties to the lower index) and its
/// largest component (ties to the component holding the smaller index).
KnnGraph knn_graph(std::span<const Point> points, std::size_t k);

/// Points spaced at most `step` apart along every edge, plus every node.
std::vector<Point> discretize_graph(const WeightedGraph& graph,
                                    std::span<const Point> points,
                                    double step);

/// Symmetric Hausdorff distance between the discretized graph and a dense
/// sample of the reference manifold.
double hausdorff_to_manifold(const WeightedGraph& graph,
                             std::span<const Point> points,
                             std::span<const Point> manifold_sample,
                             double step);

/// One "u v weight" line per edge, ascending (u, v), round-trip decimals.
void write_edge_list(std::ostream& out, const WeightedGraph& graph);

std::vector<Point> to_points(const CurveSet& curves);
std::vector<Point> to_points(std::span<const Point2> cloud);

}  // namespace rme
