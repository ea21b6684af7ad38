#include "rme/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "parallel.hpp"
#include "rme/estimators.hpp"
#include "rme/format.hpp"
#include "rme/geodesic_graph.hpp"
#include "rme/rng.hpp"

namespace rme {

MseDecomposition mse(std::span<const SampledCurve> estimates,
                     const SampledCurve& truth) {
  if (estimates.empty()) throw std::invalid_argument("mse: no estimates");
  const std::size_t m = truth.size();
  for (const auto& e : estimates) {
    if (e.grid() != truth.grid()) throw DimensionMismatch("mse: grid mismatch");
  }
  const double r = static_cast<double>(estimates.size());

  std::vector<double> mean(m, 0.0);
  for (const auto& e : estimates) {
    for (std::size_t j = 0; j < m; ++j) mean[j] += e[j];
  }
  for (double& v : mean) v /= r;

  MseDecomposition out;
  for (const auto& e : estimates) {
    double err = 0.0;
    double spread = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double a = e[j] - truth[j];
      const double b = e[j] - mean[j];
      err += a * a;
      spread += b * b;
    }
    out.mse += err;
    out.variance += spread;
  }
  out.mse /= r;
  out.variance /= r;
  for (std::size_t j = 0; j < m; ++j) {
    const double d = mean[j] - truth[j];
    out.squared_bias += d * d;
  }
  return out;
}

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Rme: return "rme";
    case EstimatorKind::Isomap: return "isomap";
    case EstimatorKind::Mbm: return "mbm";
    case EstimatorKind::Mean: return "mean";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(const std::string& text) {
  if (text == "rme") return EstimatorKind::Rme;
  if (text == "isomap") return EstimatorKind::Isomap;
  if (text == "mbm") return EstimatorKind::Mbm;
  if (text == "mean") return EstimatorKind::Mean;
  throw std::invalid_argument("unknown estimator '" + text + "'");
}

NamedEstimator make_estimator(EstimatorKind kind, std::size_t isomap_k,
                              int alpha) {
  const FrechetConfig config{alpha};
  config.validate();
  const auto selected = [](const GeneratedSample& s, const EstimateResult& r) {
    return Estimate{s.curves.curve(r.chosen_index), r.chosen_index};
  };
  switch (kind) {
    case EstimatorKind::Rme:
      return {"rme", [=](const GeneratedSample& s) {
                return selected(s, rme_median(s.curves, config));
              }};
    case EstimatorKind::Isomap:
      return {"isomap", [=](const GeneratedSample& s) {
                const std::size_t n = s.curves.count();
                const std::size_t k =
                    isomap_k == 0 ? default_isomap_k(n) : isomap_k;
                return selected(s, isomap_median(s.curves, k, config));
              }};
    case EstimatorKind::Mbm:
      return {"mbm", [=](const GeneratedSample& s) {
                return selected(s, mbm_median(s.curves));
              }};
    case EstimatorKind::Mean:
      return {"mean", [](const GeneratedSample& s) {
                return Estimate{cross_sectional_mean(s.curves), std::nullopt};
              }};
  }
  throw std::invalid_argument("unknown estimator kind");
}

void ExperimentSpec::validate() const {
  if (repetitions < 1) throw std::invalid_argument("need at least 1 repetition");
  if (n_values.empty()) throw std::invalid_argument("n_values is empty");
  for (auto n : n_values) {
    SimulationSpec s = simulation;
    s.n = n;
    s.validate();
  }
  FrechetConfig{alpha}.validate();
}

std::uint64_t repetition_seed(std::uint64_t base_seed, std::size_t r) {
  return mix64(base_seed ^ mix64(static_cast<std::uint64_t>(r)));
}

const CellReport& EvaluationReport::cell(std::size_t n,
                                         const std::string& estimator) const {
  for (const auto& c : cells) {
    if (c.n == n && c.estimator == estimator) return c;
  }
  throw std::out_of_range("no report cell for n=" + std::to_string(n) +
                          " estimator=" + estimator);
}

EvaluationReport run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<NamedEstimator> estimators;
  for (auto kind : spec.estimators) {
    estimators.push_back(make_estimator(kind, spec.isomap_k, spec.alpha));
  }
  return run_experiment(spec, estimators);
}

EvaluationReport run_experiment(const ExperimentSpec& spec,
                                std::span<const NamedEstimator> estimators) {
  spec.validate();
  const std::size_t reps = spec.repetitions;
  EvaluationReport report;
  for (std::size_t r = 0; r < reps; ++r) {
    report.repetition_seeds.push_back(repetition_seed(spec.base_seed, r));
  }

  for (std::size_t n : spec.n_values) {
    // outcomes[r][e]
    std::vector<std::vector<std::optional<Estimate>>> outcomes(
        reps, std::vector<std::optional<Estimate>>(estimators.size()));
    std::vector<std::optional<SampledCurve>> truths(reps);

    detail::parallel_for(reps, spec.threads, [&](std::size_t r) {
      SimulationSpec sim = spec.simulation;
      sim.n = n;
      sim.seed = report.repetition_seeds[r];
      const GeneratedSample sample = generate(sim);
      truths[r] = sample.template_curve;
      for (std::size_t e = 0; e < estimators.size(); ++e) {
        try {
          outcomes[r][e] = estimators[e].run(sample);
        } catch (const std::exception& ex) {
          throw ExperimentError("simulation " + to_string(sim.model) +
                                ", n=" + std::to_string(n) +
                                ", repetition " + std::to_string(r) +
                                ", estimator " + estimators[e].name + ": " +
                                ex.what());
        }
      }
    });

    for (std::size_t e = 0; e < estimators.size(); ++e) {
      CellReport cell{spec.simulation.model, n, estimators[e].name, {}, {}};
      std::vector<SampledCurve> curves;
      curves.reserve(reps);
      for (std::size_t r = 0; r < reps; ++r) {
        curves.push_back(outcomes[r][e]->curve);
        cell.chosen_indices.push_back(outcomes[r][e]->chosen_index);
      }
      cell.stats = mse(curves, *truths.front());
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

void write_report_csv(std::ostream& out, const EvaluationReport& report) {
  out << "simulation,n,estimator,mse,bias2,variance\n";
  for (const auto& c : report.cells) {
    out << to_string(c.simulation) << ',' << c.n << ',' << c.estimator << ','
        << format_double(c.stats.mse) << ','
        << format_double(c.stats.squared_bias) << ','
        << format_double(c.stats.variance) << '\n';
  }
}

nlohmann::json to_json(const EvaluationReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json chosen = nlohmann::json::array();
    for (const auto& idx : c.chosen_indices) {
      if (idx) {
        chosen.push_back(*idx);
      } else {
        chosen.push_back(nullptr);
      }
    }
    cells.push_back({{"simulation", to_string(c.simulation)},
                     {"n", c.n},
                     {"estimator", c.estimator},
                     {"mse", c.stats.mse},
                     {"bias2", c.stats.squared_bias},
                     {"variance", c.stats.variance},
                     {"chosen_indices", std::move(chosen)}});
  }
  return {{"rng", Rng::kName},
          {"repetition_seeds", report.repetition_seeds},
          {"cells", std::move(cells)}};
}

std::vector<std::vector<double>> parabola_locus(std::size_t points) {
  if (points < 2) throw std::invalid_argument("locus needs >= 2 points");
  std::vector<std::vector<double>> out(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double t = std::lerp(-1.0, 1.0, static_cast<double>(k) /
                                               static_cast<double>(points - 1));
    out[k] = {t, 2.0 * t * t};
  }
  return out;
}

namespace {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const ConvergenceSpec& spec) {
  if (spec.n_values.empty()) throw std::invalid_argument("n_values is empty");
  if (spec.seeds.empty()) throw std::invalid_argument("no seeds given");
  const auto locus = parabola_locus(spec.manifold_points);
  std::vector<ConvergenceRow> rows;
  for (std::size_t n : spec.n_values) {
    ConvergenceRow row{n, 0.0, {}};
    for (auto seed : spec.seeds) {
      const auto points =
          to_points(generate_parabola_cloud(n, seed, spec.noise_sd));
      const RobustGraph g = robust_graph(points);
      row.hausdorff.push_back(
          hausdorff_to_manifold(g.graph, points, locus, spec.step));
    }
    row.median_hausdorff = median(row.hausdorff);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_convergence_csv(std::ostream& out,
                           std::span<const ConvergenceRow> rows) {
  out << "n,median_hausdorff\n";
  for (const auto& row : rows) {
    out << row.n << ',' << format_double(row.median_hausdorff) << '\n';
  }
}

}  // namespace rme
