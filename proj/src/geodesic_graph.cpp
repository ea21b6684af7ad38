#include "rme/geodesic_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <tuple>

#include "parallel.hpp"
#include "rme/format.hpp"

namespace rme {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t common_dimension(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("no points given");
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw DimensionMismatch("points differ in dimension");
  }
  return dim;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

double DistanceMatrix::max_entry() const noexcept {
  double best = 0.0;
  for (double v : data_) best = std::max(best, v);
  return best;
}

WeightedGraph::WeightedGraph(std::size_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v || e.v >= node_count_) {
      throw std::invalid_argument("edge endpoints out of range or equal");
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw std::invalid_argument("edge weight must be finite and >= 0");
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  const auto dup = std::adjacent_find(
      edges_.begin(), edges_.end(),
      [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; });
  if (dup != edges_.end()) throw std::invalid_argument("duplicate edge");
}

bool WeightedGraph::has_edge(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(
      edges_.begin(), edges_.end(), Edge{a, b, 0.0},
      [](const Edge& x, const Edge& y) {
        return std::tie(x.u, x.v) < std::tie(y.u, y.v);
      });
}

std::vector<std::vector<WeightedGraph::Neighbor>> WeightedGraph::adjacency()
    const {
  std::vector<std::vector<Neighbor>> adj(node_count_);
  for (const auto& e : edges_) {
    adj[e.u].push_back({e.v, e.weight});
    adj[e.v].push_back({e.u, e.weight});
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return adj;
}

std::vector<std::vector<std::size_t>> WeightedGraph::components() const {
  std::vector<std::size_t> parent(node_count_);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges_) {
    const auto a = find(e.u);
    const auto b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(node_count_, node_count_);
  for (std::size_t i = 0; i < node_count_; ++i) {
    const auto root = find(i);
    if (slot[root] == node_count_) {
      slot[root] = groups.size();
      groups.emplace_back();
    }
    groups[slot[root]].push_back(i);
  }
  return groups;
}

WeightedGraph WeightedGraph::induced(std::span<const std::size_t> nodes) const {
  std::vector<std::size_t> label(node_count_, node_count_);
  for (std::size_t k = 0; k < nodes.size(); ++k) label[nodes[k]] = k;
  std::vector<Edge> kept;
  for (const auto& e : edges_) {
    if (label[e.u] != node_count_ && label[e.v] != node_count_) {
      kept.push_back({label[e.u], label[e.v], e.weight});
    }
  }
  return WeightedGraph(nodes.size(), std::move(kept));
}

double euclidean_distance(std::span<const double> a,
                          std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

DistanceMatrix pairwise_euclidean(std::span<const Point> points) {
  common_dimension(points);
  const std::size_t n = points.size();
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = euclidean_distance(points[i], points[j]);
    }
  }
  return d;
}

WeightedGraph euclidean_mst(const DistanceMatrix& dist) {
  const std::size_t n = dist.size();
  if (n == 0) throw std::invalid_argument("euclidean_mst: empty input");
  // best[v] is the lightest edge (weight, lo, hi) from the tree to v.
  using Key = std::tuple<double, std::size_t, std::size_t>;
  const Key none{kInf, n, n};
  std::vector<Key> best(n, none);
  std::vector<bool> in_tree(n, false);
  std::vector<Edge> edges;
  edges.reserve(n - 1);

  std::size_t current = 0;
  in_tree[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      const Key candidate{dist(current, v), std::min(current, v),
                          std::max(current, v)};
      if (candidate < best[v]) best[v] = candidate;
    }
    std::size_t next = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (next == n || best[v] < best[next])) next = v;
    }
    const auto& [w, lo, hi] = best[next];
    edges.push_back({lo, hi, w});
    in_tree[next] = true;
    current = next;
  }
  return WeightedGraph(n, std::move(edges));
}

std::vector<double> ball_radii(const WeightedGraph& mst) {
  if (mst.node_count() < 2) return {};
  std::vector<double> radii(mst.node_count(), 0.0);
  for (const auto& e : mst.edges()) {
    radii[e.u] = std::max(radii[e.u], e.weight);
    radii[e.v] = std::max(radii[e.v], e.weight);
  }
  return radii;
}

bool segment_covered(std::size_t a, std::size_t b,
                     std::span<const Point> points,
                     std::span<const double> radii) {
  if (a == b) throw std::invalid_argument("segment_covered: a == b");
  if (radii.size() != points.size()) {
    throw DimensionMismatch("one radius per point required");
  }
  const auto& origin = points[a];
  const std::size_t dim = origin.size();
  Point direction(dim);
  for (std::size_t k = 0; k < dim; ++k) direction[k] = points[b][k] - origin[k];
  const double length_sq = dot(direction, direction);
  // A degenerate segment is the point itself, inside its own closed ball.
  if (length_sq == 0.0) return true;
  const double length = std::sqrt(length_sq);

  // Parameter interval [lo, hi] of lambda in which origin + lambda *
  // direction lies in each relevant ball.
  std::vector<std::pair<double, double>> spans;
  Point offset(dim);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double r = radii[k];
    if (!(r > 0.0)) continue;
    for (std::size_t c = 0; c < dim; ++c) offset[c] = origin[c] - points[k][c];
    const double foot = -dot(offset, direction) / length_sq;
    double line_dist_sq = 0.0;
    double seg_dist_sq = 0.0;
    const double clamped = std::clamp(foot, 0.0, 1.0);
    for (std::size_t c = 0; c < dim; ++c) {
      const double on_line = offset[c] + foot * direction[c];
      const double on_segment = offset[c] + clamped * direction[c];
      line_dist_sq += on_line * on_line;
      seg_dist_sq += on_segment * on_segment;
    }
    if (!(seg_dist_sq < r * r)) continue;
    const double half = std::sqrt(std::max(0.0, r * r - line_dist_sq)) / length;
    spans.emplace_back(foot - half, foot + half);
  }
  std::sort(spans.begin(), spans.end());

  const double gap = kCoverageTolerance;
  double reach = 0.0;
  for (const auto& [lo, hi] : spans) {
    if (lo > reach + gap) return false;
    reach = std::max(reach, hi);
    if (reach >= 1.0) return true;
  }
  return reach >= 1.0 - gap;
}

RobustGraph robust_graph(std::span<const Point> points, unsigned threads) {
  common_dimension(points);
  const std::size_t n = points.size();
  const DistanceMatrix dist = pairwise_euclidean(points);
  WeightedGraph mst = euclidean_mst(dist);
  std::vector<double> radii = ball_radii(mst);
  if (n < 2) return {WeightedGraph(n), std::move(mst), std::move(radii)};

  std::vector<std::vector<Edge>> per_row(n);
  detail::parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (mst.has_edge(i, j) || segment_covered(i, j, points, radii)) {
        per_row[i].push_back({i, j, dist(i, j)});
      }
    }
  });
  std::vector<Edge> edges;
  for (auto& row : per_row) edges.insert(edges.end(), row.begin(), row.end());
  return {WeightedGraph(n, std::move(edges)), std::move(mst), std::move(radii)};
}

namespace {

struct SourceTree {
  std::vector<double> dist;
  std::vector<std::size_t> parent;
};

SourceTree dijkstra(
    const std::vector<std::vector<WeightedGraph::Neighbor>>& adj,
    std::size_t source) {
  const std::size_t n = adj.size();
  SourceTree tree{std::vector<double>(n, kInf), std::vector<std::size_t>(n, n)};
  std::vector<bool> done(n, false);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  tree.dist[source] = 0.0;
  tree.parent[source] = source;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = true;
    for (const auto& [v, w] : adj[u]) {
      const double candidate = d + w;
      if (candidate < tree.dist[v]) {
        tree.dist[v] = candidate;
        tree.parent[v] = u;
        heap.push({candidate, v});
      }
    }
  }
  return tree;
}

}  // namespace

GeodesicMatrix shortest_path_distances(const WeightedGraph& graph,
                                       unsigned threads) {
  const std::size_t n = graph.node_count();
  const auto adj = graph.adjacency();
  GeodesicMatrix out(n);
  std::vector<std::size_t> unreachable(n, n);
  detail::parallel_for(n, threads, [&](std::size_t s) {
    const SourceTree tree = dijkstra(adj, s);
    for (std::size_t t = s + 1; t < n; ++t) {
      if (!std::isfinite(tree.dist[t])) {
        unreachable[s] = t;
        return;
      }
      out(s, t) = tree.dist[t];
    }
  });
  for (std::size_t s = 0; s < n; ++s) {
    if (unreachable[s] != n) {
      throw DisconnectedGraph("no path between nodes " + std::to_string(s) +
                              " and " + std::to_string(unreachable[s]));
    }
    for (std::size_t t = s + 1; t < n; ++t) out(t, s) = out(s, t);
  }
  return out;
}

std::vector<std::size_t> shortest_path(const WeightedGraph& graph,
                                       std::size_t source, std::size_t target) {
  const std::size_t n = graph.node_count();
  if (source >= n || target >= n) {
    throw std::invalid_argument("shortest_path: node out of range");
  }
  const SourceTree tree = dijkstra(graph.adjacency(), source);
  if (tree.parent[target] == n) {
    throw DisconnectedGraph("no path between nodes " + std::to_string(source) +
                            " and " + std::to_string(target));
  }
  std::vector<std::size_t> path{target};
  while (path.back() != source) path.push_back(tree.parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

GeodesicMatrix geodesic_distances(std::span<const Point> points,
                                  unsigned threads) {
  return shortest_path_distances(robust_graph(points, threads).graph, threads);
}

KnnGraph knn_graph(std::span<const Point> points, std::size_t k) {
  common_dimension(points);
  const std::size_t n = points.size();
  if (k < 1 || k >= n) {
    throw std::invalid_argument("knn_graph: need 1 <= K < n");
  }
  const DistanceMatrix dist = pairwise_euclidean(points);
  std::vector<Edge> edges;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](std::size_t a, std::size_t b) {
                        return std::pair(dist(i, a), a) <
                               std::pair(dist(i, b), b);
                      });
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t j = order[r];
      edges.push_back({std::min(i, j), std::max(i, j), dist(i, j)});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) {
                            return a.u == b.u && a.v == b.v;
                          }),
              edges.end());
  WeightedGraph graph(n, std::move(edges));

  // components() is ordered by smallest member, so the first of the largest
  // size wins ties.
  auto groups = graph.components();
  std::size_t pick = 0;
  for (std::size_t c = 1; c < groups.size(); ++c) {
    if (groups[c].size() > groups[pick].size()) pick = c;
  }
  return {std::move(graph), std::move(groups[pick])};
}

std::vector<Point> discretize_graph(const WeightedGraph& graph,
                                    std::span<const Point> points,
                                    double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (points.size() != graph.node_count()) {
    throw DimensionMismatch("one point per graph node required");
  }
  std::vector<Point> out(points.begin(), points.end());
  for (const auto& e : graph.edges()) {
    const auto& a = points[e.u];
    const auto& b = points[e.v];
    const auto pieces =
        static_cast<std::size_t>(std::ceil(euclidean_distance(a, b) / step));
    for (std::size_t s = 1; s < pieces; ++s) {
      const double lambda =
          static_cast<double>(s) / static_cast<double>(pieces);
      Point p(a.size());
      for (std::size_t c = 0; c < a.size(); ++c) {
        p[c] = std::lerp(a[c], b[c], lambda);
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

namespace {

double directed_hausdorff(std::span<const Point> from,
                          std::span<const Point> to) {
  double worst = 0.0;
  for (const auto& p : from) {
    double nearest = kInf;
    for (const auto& q : to) {
      double s = 0.0;
      for (std::size_t c = 0; c < p.size() && s < nearest; ++c) {
        const double d = p[c] - q[c];
        s += d * d;
      }
      nearest = std::min(nearest, s);
      if (nearest <= worst) break;
    }
    worst = std::max(worst, nearest);
  }
  return std::sqrt(worst);
}

}  // namespace

double hausdorff_to_manifold(const WeightedGraph& graph,
                             std::span<const Point> points,
                             std::span<const Point> manifold_sample,
                             double step) {
  if (graph.node_count() == 0 || manifold_sample.empty()) {
    throw std::invalid_argument("hausdorff_to_manifold: empty input");
  }
  const auto dim = common_dimension(points);
  if (common_dimension(manifold_sample) != dim) {
    throw DimensionMismatch("manifold sample dimension differs");
  }
  const auto graph_points = discretize_graph(graph, points, step);
  return std::max(directed_hausdorff(graph_points, manifold_sample),
                  directed_hausdorff(manifold_sample, graph_points));
}

void write_edge_list(std::ostream& out, const WeightedGraph& graph) {
  for (const auto& e : graph.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_double(e.weight) << '\n';
  }
}

std::vector<Point> to_points(const CurveSet& curves) {
  return curves.points();
}

std::vector<Point> to_points(std::span<const Point2> cloud) {
  std::vector<Point> out;
  out.reserve(cloud.size());
  for (const auto& p : cloud) out.push_back({p.x, p.y});
  return out;
}

}  // namespace rme
