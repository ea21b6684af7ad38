#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rme/curve_model.hpp"
#include "rme/geodesic_graph.hpp"

namespace rme {

/// Power applied to distances in the Frechet objective: 1 gives the
/// intrinsic median, 2 the intrinsic mean.
struct FrechetConfig {
  int alpha = 1;

  void validate() const;
};

/// Outcome of selecting one observed curve as the template.
struct EstimateResult {
  std::string estimator;
  std::size_t chosen_index = 0;
  /// Objective (or depth, for band depth) per curve; +inf for curves the
  /// estimator excluded.
  std::vector<double> objective_values;
  std::vector<std::size_t> excluded_indices;
};

nlohmann::json to_json(const EstimateResult& result);

/// sum_i geodesics(i, candidate)^alpha, accumulated in index order.
double frechet_objective(const GeodesicMatrix& geodesics, std::size_t candidate,
                         const FrechetConfig& config = {});

/// Empirical Frechet median over the nodes of `geodesics` (ties to the
/// smallest index).
EstimateResult frechet_median(const GeodesicMatrix& geodesics,
                              const FrechetConfig& config = {},
                              std::string name = "frechet");

/// Robust manifold embedding estimator: Frechet median under the
/// shortest-path distance of the ball-covered MST graph.
EstimateResult rme_median(std::span<const Point> points,
                          const FrechetConfig& config = {},
                          unsigned threads = 1);
EstimateResult rme_median(const CurveSet& curves,
                          const FrechetConfig& config = {},
                          unsigned threads = 1);

/// max(5, ceil(log2 n)), capped at n - 1.
std::size_t default_isomap_k(std::size_t n);

/// Isomap baseline: Frechet median under K-NN graph distances, restricted to
/// the largest connected component.
EstimateResult isomap_median(std::span<const Point> points, std::size_t k,
                             const FrechetConfig& config = {});
EstimateResult isomap_median(const CurveSet& curves, std::size_t k,
                             const FrechetConfig& config = {});

/// Modified band depth with bands from pairs of curves and inclusive band
/// membership, as a proportion of grid points.
std::vector<double> modified_band_depth(const CurveSet& curves);

/// Deepest curve by modified band depth; objective_values holds the depths.
EstimateResult mbm_median(const CurveSet& curves);

/// Lower median: order statistic ceil(n / 2) (1-based).
double lower_median(std::vector<double> values);

/// Template evaluated at t_j - median(shifts), the structural median of a
/// pure translation model f(t - a).
SampledCurve structural_median_oracle(const TemplateFunction& f,
                                      const Grid& grid,
                                      std::span<const double> shifts);

}  // namespace rme
