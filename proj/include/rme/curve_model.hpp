#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rme {

/// Thrown when two objects that must share a grid or a dimension do not.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered, strictly increasing sample times shared by every curve of a set.
class Grid {
 public:
  explicit Grid(std::vector<double> points);

  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t j) const { return points_[j]; }
  std::span<const double> points() const noexcept { return points_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::vector<double> points_;
};

/// m equally spaced points covering [low, high], both endpoints included.
Grid make_grid(double low, double high, std::size_t m);

/// Values of one function on a grid.
class SampledCurve {
 public:
  SampledCurve(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const SampledCurve&, const SampledCurve&) = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// n curves observed on one common grid. Each curve is a point of R^m.
class CurveSet {
 public:
  /// `names` defaults to c1..cn when empty.
  CurveSet(Grid grid, std::vector<std::vector<double>> curves,
           std::vector<std::string> names = {});

  const Grid& grid() const noexcept { return grid_; }
  std::size_t count() const noexcept { return curves_.size(); }
  std::size_t grid_size() const noexcept { return grid_.size(); }

  std::span<const double> values(std::size_t i) const { return curves_[i]; }
  const std::vector<std::vector<double>>& points() const noexcept {
    return curves_;
  }
  const std::vector<std::string>& names() const noexcept { return names_; }

  SampledCurve curve(std::size_t i) const;

  friend bool operator==(const CurveSet&, const CurveSet&) = default;

 private:
  Grid grid_;
  std::vector<std::vector<double>> curves_;
  std::vector<std::string> names_;
};

/// Pointwise arithmetic mean of all curves.
SampledCurve cross_sectional_mean(const CurveSet& curves);

// ---------------------------------------------------------------------------
// Shape invariant simulation models.

enum class ModelKind { Sim1, Sim2, Sim3, Sim4, ParabolaCloud };

std::string to_string(ModelKind kind);
/// Accepts "1".."4", "sim1".."sim4" and "parabola".
ModelKind parse_model_kind(const std::string& text);

/// Deformation of one curve: amplitude * f(scale * t + shift) + offset.
/// Models that do not use a component keep its identity value.
struct WarpParams {
  double amplitude = 1.0;
  double scale = 1.0;
  double shift = 0.0;
  double offset = 0.0;

  friend bool operator==(const WarpParams&, const WarpParams&) = default;
};

struct Interval {
  double low;
  double high;

  bool contains(double x) const noexcept { return low <= x && x <= high; }
};

/// Closed sampling intervals of the four warp components for one model.
/// Unused components are degenerate intervals at their identity value.
struct WarpRanges {
  Interval amplitude{1.0, 1.0};
  Interval scale{1.0, 1.0};
  Interval shift{0.0, 0.0};
  Interval offset{0.0, 0.0};

  bool contains(const WarpParams& p) const noexcept {
    return amplitude.contains(p.amplitude) && scale.contains(p.scale) &&
           shift.contains(p.shift) && offset.contains(p.offset);
  }
};

WarpRanges warp_ranges(ModelKind kind, bool atypical);

using TemplateFunction = std::function<double(double)>;

/// The model's template f. `phi` is only used by Sim4.
TemplateFunction template_function(ModelKind kind, double phi = 0.9);

/// 5 sin(t) / t, continuous at zero.
double scaled_sinc(double t) noexcept;

/// amplitude * f(scale * t + shift) + offset, in exactly that order.
double warped_value(const TemplateFunction& f, const WarpParams& p,
                    double t);

struct SimulationSpec {
  ModelKind model = ModelKind::Sim1;
  std::size_t n = 30;
  std::size_t m = 100;
  Interval interval{-10.0, 10.0};
  std::uint64_t seed = 0;
  double outlier_fraction = 0.0;
  double phi = 0.9;

  void validate() const;
};

struct GeneratedSample {
  CurveSet curves;
  SampledCurve template_curve;
  std::vector<WarpParams> warp_params;
  std::vector<std::size_t> atypical_indices;
};

/// ceil(fraction * n), robust to the representation error of fraction * n
/// (0.1 * 30 must give 3, not 4).
std::size_t atypical_count(double fraction, std::size_t n);

/// Draws one sample from a shape invariant model. Curve i uses its own
/// random substream, so samples of different sizes with the same seed share
/// their leading typical curves.
GeneratedSample generate(const SimulationSpec& spec);

struct Point2 {
  double x;
  double y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Noisy parabola: x_i = u_i + e1, y_i = 2 u_i^2 + e2 with
/// u_i = (2i - n - 1) / (n - 1), i = 1..n, and independent N(0, noise_sd^2)
/// errors. noise_sd = 0 gives the exact locus samples.
std::vector<Point2> generate_parabola_cloud(std::size_t n, std::uint64_t seed,
                                            double noise_sd = 0.1);

}  // namespace rme
