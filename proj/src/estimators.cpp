#include "rme/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace rme {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double power(double x, int alpha) { return alpha == 1 ? x : x * x; }

// Index of the smallest finite objective; ties go to the lower index.
std::size_t argmin(std::span<const double> values) {
  std::size_t best = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) continue;
    if (best == values.size() || values[i] < values[best]) best = i;
  }
  return best;
}

}  // namespace

void FrechetConfig::validate() const {
  if (alpha != 1 && alpha != 2) {
    throw std::invalid_argument("alpha must be 1 or 2");
  }
}

nlohmann::json to_json(const EstimateResult& result) {
  nlohmann::json objectives = nlohmann::json::array();
  for (double v : result.objective_values) {
    if (std::isfinite(v)) {
      objectives.push_back(v);
    } else {
      objectives.push_back(nullptr);
    }
  }
  return {{"estimator", result.estimator},
          {"chosen_index", result.chosen_index},
          {"objective_values", std::move(objectives)},
          {"excluded_indices", result.excluded_indices}};
}

double frechet_objective(const GeodesicMatrix& geodesics, std::size_t candidate,
                         const FrechetConfig& config) {
  config.validate();
  if (candidate >= geodesics.size()) {
    throw std::invalid_argument("candidate index out of range");
  }
  double sum = 0.0;
  for (double d : geodesics.row(candidate)) sum += power(d, config.alpha);
  return sum;
}

EstimateResult frechet_median(const GeodesicMatrix& geodesics,
                              const FrechetConfig& config, std::string name) {
  config.validate();
  const std::size_t n = geodesics.size();
  if (n == 0) throw std::invalid_argument("frechet_median: empty input");
  EstimateResult result;
  result.estimator = std::move(name);
  result.objective_values.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    result.objective_values[c] = frechet_objective(geodesics, c, config);
  }
  result.chosen_index = argmin(result.objective_values);
  return result;
}

EstimateResult rme_median(std::span<const Point> points,
                          const FrechetConfig& config, unsigned threads) {
  config.validate();
  return frechet_median(geodesic_distances(points, threads), config, "rme");
}

EstimateResult rme_median(const CurveSet& curves, const FrechetConfig& config,
                          unsigned threads) {
  return rme_median(to_points(curves), config, threads);
}

std::size_t default_isomap_k(std::size_t n) {
  if (n < 2) throw std::invalid_argument("isomap needs at least 2 curves");
  const auto log2_ceil = static_cast<std::size_t>(std::bit_width(n - 1));
  return std::min(std::max<std::size_t>(5, log2_ceil), n - 1);
}

EstimateResult isomap_median(std::span<const Point> points, std::size_t k,
                             const FrechetConfig& config) {
  config.validate();
  const std::size_t n = points.size();
  if (n < 2 || k < 1 || k >= n) {
    throw std::invalid_argument("isomap_median: need 1 <= K < n");
  }
  const KnnGraph knn = knn_graph(points, k);
  const auto& nodes = knn.largest_component;
  const GeodesicMatrix local =
      shortest_path_distances(knn.graph.induced(nodes));

  EstimateResult result;
  result.estimator = "isomap";
  result.objective_values.assign(n, kInf);
  for (std::size_t c = 0; c < nodes.size(); ++c) {
    result.objective_values[nodes[c]] = frechet_objective(local, c, config);
  }
  for (std::size_t i = 0, c = 0; i < n; ++i) {
    if (c < nodes.size() && nodes[c] == i) {
      ++c;
    } else {
      result.excluded_indices.push_back(i);
    }
  }
  result.chosen_index = argmin(result.objective_values);
  return result;
}

EstimateResult isomap_median(const CurveSet& curves, std::size_t k,
                             const FrechetConfig& config) {
  return isomap_median(to_points(curves), k, config);
}

std::vector<double> modified_band_depth(const CurveSet& curves) {
  const std::size_t n = curves.count();
  const std::size_t m = curves.grid_size();
  if (n < 2) throw std::invalid_argument("band depth needs n >= 2");

  // At each grid point, curve k lies in the band of every pair except those
  // with both members strictly below it or both strictly above it.
  const auto pairs = [](std::size_t c) -> std::size_t {
    return c < 2 ? 0 : c * (c - 1) / 2;
  };
  const std::size_t all_pairs = pairs(n);
  std::vector<std::size_t> inside(n, 0);
  std::vector<double> column(n);
  std::vector<double> sorted(n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) column[i] = curves.values(i)[j];
    sorted = column;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < n; ++k) {
      const auto below = static_cast<std::size_t>(
          std::lower_bound(sorted.begin(), sorted.end(), column[k]) -
          sorted.begin());
      const auto above = static_cast<std::size_t>(
          sorted.end() -
          std::upper_bound(sorted.begin(), sorted.end(), column[k]));
      inside[k] += all_pairs - pairs(below) - pairs(above);
    }
  }
  std::vector<double> depth(n);
  const double denom = static_cast<double>(all_pairs) * static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) {
    depth[k] = static_cast<double>(inside[k]) / denom;
  }
  return depth;
}

EstimateResult mbm_median(const CurveSet& curves) {
  EstimateResult result;
  result.estimator = "mbm";
  result.objective_values = modified_band_depth(curves);
  const auto& depth = result.objective_values;
  result.chosen_index = static_cast<std::size_t>(
      std::max_element(depth.begin(), depth.end()) - depth.begin());
  return result;
}

double lower_median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty list");
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

SampledCurve structural_median_oracle(const TemplateFunction& f,
                                      const Grid& grid,
                                      std::span<const double> shifts) {
  if (!f) throw std::invalid_argument("template is not evaluable");
  const double med =
      lower_median(std::vector<double>(shifts.begin(), shifts.end()));
  std::vector<double> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) values[j] = f(grid[j] - med);
  return SampledCurve(grid, std::move(values));
}

}  // namespace rme
