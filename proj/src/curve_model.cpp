#include "rme/curve_model.hpp"

#include <algorithm>
#include <cmath>

#include "rme/rng.hpp"

namespace rme {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) + ": non-finite value");
    }
  }
}

}  // namespace

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw std::invalid_argument("grid needs at least 2 points");
  }
  require_finite(points_, "grid");
  for (std::size_t j = 1; j < points_.size(); ++j) {
    if (!(points_[j - 1] < points_[j])) {
      throw std::invalid_argument("grid must be strictly increasing");
    }
  }
}

Grid make_grid(double low, double high, std::size_t m) {
  if (m < 2) throw std::invalid_argument("make_grid: m must be >= 2");
  if (!(low < high)) throw std::invalid_argument("make_grid: need low < high");
  std::vector<double> t(m);
  const double steps = static_cast<double>(m - 1);
  for (std::size_t j = 0; j < m; ++j) {
    t[j] = std::lerp(low, high, static_cast<double>(j) / steps);
  }
  return Grid(std::move(t));
}

SampledCurve::SampledCurve(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DimensionMismatch("curve length does not match grid length");
  }
  require_finite(values_, "curve");
}

CurveSet::CurveSet(Grid grid, std::vector<std::vector<double>> curves,
                   std::vector<std::string> names)
    : grid_(std::move(grid)),
      curves_(std::move(curves)),
      names_(std::move(names)) {
  if (curves_.empty()) throw std::invalid_argument("curve set is empty");
  for (const auto& c : curves_) {
    if (c.size() != grid_.size()) {
      throw DimensionMismatch("curve length does not match grid length");
    }
    require_finite(c, "curve");
  }
  if (names_.empty()) {
    names_.reserve(curves_.size());
    for (std::size_t i = 0; i < curves_.size(); ++i) {
      names_.push_back("c" + std::to_string(i + 1));
    }
  } else if (names_.size() != curves_.size()) {
    throw std::invalid_argument("one name per curve required");
  }
}

SampledCurve CurveSet::curve(std::size_t i) const {
  return SampledCurve(grid_, curves_.at(i));
}

SampledCurve cross_sectional_mean(const CurveSet& curves) {
  const std::size_t m = curves.grid_size();
  std::vector<double> mean(m, 0.0);
  for (std::size_t i = 0; i < curves.count(); ++i) {
    const auto v = curves.values(i);
    for (std::size_t j = 0; j < m; ++j) mean[j] += v[j];
  }
  const double n = static_cast<double>(curves.count());
  for (double& x : mean) x /= n;
  return SampledCurve(curves.grid(), std::move(mean));
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Sim1: return "sim1";
    case ModelKind::Sim2: return "sim2";
    case ModelKind::Sim3: return "sim3";
    case ModelKind::Sim4: return "sim4";
    case ModelKind::ParabolaCloud: return "parabola";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& text) {
  if (text == "1" || text == "sim1") return ModelKind::Sim1;
  if (text == "2" || text == "sim2") return ModelKind::Sim2;
  if (text == "3" || text == "sim3") return ModelKind::Sim3;
  if (text == "4" || text == "sim4") return ModelKind::Sim4;
  if (text == "parabola") return ModelKind::ParabolaCloud;
  throw std::invalid_argument("unknown simulation model '" + text + "'");
}

WarpRanges warp_ranges(ModelKind kind, bool atypical) {
  WarpRanges r;
  switch (kind) {
    case ModelKind::Sim1:
      r.shift = atypical ? Interval{4.5, 6.0} : Interval{-5.0, 5.0};
      break;
    case ModelKind::Sim2:
      r.scale = atypical ? Interval{0.35, 0.65} : Interval{0.7, 1.3};
      r.shift = atypical ? Interval{-0.5, 0.5} : Interval{-1.0, 1.0};
      break;
    case ModelKind::Sim3:
      if (atypical) {
        r.amplitude = {1.3, 1.4};
        r.scale = {0.7, 1.3};
        r.shift = {-1.5, -1.0};
        r.offset = {1.0, 1.5};
      } else {
        r.amplitude = {0.7, 1.3};
        r.scale = {0.7, 1.3};
        r.shift = {-1.0, 1.0};
        r.offset = {-1.0, 1.0};
      }
      break;
    case ModelKind::Sim4:
      if (atypical) {
        r.amplitude = {1.05, 1.95};
        r.scale = {1.05, 1.95};
      } else {
        r.amplitude = {0.7, 1.3};
        r.scale = {0.7, 1.3};
      }
      r.shift = {-1.0, 1.0};
      r.offset = {-1.0, 1.0};
      break;
    case ModelKind::ParabolaCloud:
      throw std::invalid_argument("parabola cloud has no warp parameters");
  }
  return r;
}

double scaled_sinc(double t) noexcept {
  if (t == 0.0) return 5.0;
  return 5.0 * std::sin(t) / t;
}

TemplateFunction template_function(ModelKind kind, double phi) {
  switch (kind) {
    case ModelKind::Sim1:
      return scaled_sinc;
    case ModelKind::Sim2:
      return [](double t) { return 5.0 * std::sin(t); };
    case ModelKind::Sim3:
      return [](double t) { return t * std::sin(t); };
    case ModelKind::Sim4:
      return [phi](double t) {
        return phi * t + t * std::sin(t) * std::cos(t);
      };
    case ModelKind::ParabolaCloud:
      break;
  }
  throw std::invalid_argument("model has no template function");
}

double warped_value(const TemplateFunction& f, const WarpParams& p,
                    double t) {
  return p.amplitude * f(p.scale * t + p.shift) + p.offset;
}

void SimulationSpec::validate() const {
  if (n < 1) throw std::invalid_argument("simulation: n must be >= 1");
  if (m < 2) throw std::invalid_argument("simulation: m must be >= 2");
  if (!(interval.low < interval.high)) {
    throw std::invalid_argument("simulation: need low < high");
  }
  if (!(outlier_fraction >= 0.0 && outlier_fraction < 1.0)) {
    throw std::invalid_argument("simulation: outlier fraction not in [0,1)");
  }
  if (!std::isfinite(phi)) throw std::invalid_argument("simulation: bad phi");
}

std::size_t atypical_count(double fraction, std::size_t n) {
  const double x = fraction * static_cast<double>(n);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, x)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(x));
}

namespace {

WarpParams draw_params(ModelKind kind, const WarpRanges& r, Rng& rng) {
  WarpParams p;
  switch (kind) {
    case ModelKind::Sim1:
      p.shift = rng.uniform(r.shift.low, r.shift.high);
      break;
    case ModelKind::Sim2:
      p.scale = rng.uniform(r.scale.low, r.scale.high);
      p.shift = rng.uniform(r.shift.low, r.shift.high);
      break;
    case ModelKind::Sim3:
    case ModelKind::Sim4:
      p.amplitude = rng.uniform(r.amplitude.low, r.amplitude.high);
      p.scale = rng.uniform(r.scale.low, r.scale.high);
      p.shift = rng.uniform(r.shift.low, r.shift.high);
      p.offset = rng.uniform(r.offset.low, r.offset.high);
      break;
    case ModelKind::ParabolaCloud:
      break;
  }
  return p;
}

}  // namespace

GeneratedSample generate(const SimulationSpec& spec) {
  spec.validate();
  if (spec.model == ModelKind::ParabolaCloud) {
    throw std::invalid_argument(
        "parabola cloud is not a curve model; use generate_parabola_cloud");
  }
  const Grid grid = make_grid(spec.interval.low, spec.interval.high, spec.m);
  const TemplateFunction f = template_function(spec.model, spec.phi);
  const std::size_t n_atypical = atypical_count(spec.outlier_fraction, spec.n);
  const std::size_t first_atypical = spec.n - n_atypical;
  const WarpRanges typical = warp_ranges(spec.model, false);
  const WarpRanges atypical = warp_ranges(spec.model, true);

  std::vector<WarpParams> params(spec.n);
  std::vector<std::vector<double>> curves(spec.n,
                                          std::vector<double>(spec.m));
  for (std::size_t i = 0; i < spec.n; ++i) {
    Rng rng = Rng::substream(spec.seed, i);
    params[i] = draw_params(spec.model, i < first_atypical ? typical : atypical,
                            rng);
    for (std::size_t j = 0; j < spec.m; ++j) {
      curves[i][j] = warped_value(f, params[i], grid[j]);
    }
  }

  std::vector<double> truth(spec.m);
  for (std::size_t j = 0; j < spec.m; ++j) {
    truth[j] = warped_value(f, WarpParams{}, grid[j]);
  }

  std::vector<std::size_t> atypical_indices;
  for (std::size_t i = first_atypical; i < spec.n; ++i) {
    atypical_indices.push_back(i);
  }

  return GeneratedSample{CurveSet(grid, std::move(curves)),
                         SampledCurve(grid, std::move(truth)),
                         std::move(params), std::move(atypical_indices)};
}

std::vector<Point2> generate_parabola_cloud(std::size_t n, std::uint64_t seed,
                                            double noise_sd) {
  if (n < 2) throw std::invalid_argument("parabola cloud needs n >= 2");
  if (!(noise_sd >= 0.0)) throw std::invalid_argument("noise_sd must be >= 0");
  std::vector<Point2> points(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double i = static_cast<double>(k + 1);
    const double u = (2.0 * i - static_cast<double>(n) - 1.0) / denom;
    Rng rng = Rng::substream(seed, k);
    const double e1 = noise_sd * rng.standard_normal();
    const double e2 = noise_sd * rng.standard_normal();
    points[k] = {u + e1, 2.0 * u * u + e2};
  }
  return points;
}

}  // namespace rme
