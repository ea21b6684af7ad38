#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rme/curve_model.hpp"

namespace rme {

/// Mean squared error of R estimates against the truth, split into squared
/// bias and variance around the pointwise mean estimate. Norms are plain
/// Euclidean norms over the grid values.
struct MseDecomposition {
  double mse = 0.0;
  double squared_bias = 0.0;
  double variance = 0.0;
};

MseDecomposition mse(std::span<const SampledCurve> estimates,
                     const SampledCurve& truth);

enum class EstimatorKind { Rme, Isomap, Mbm, Mean };

std::string to_string(EstimatorKind kind);
EstimatorKind parse_estimator_kind(const std::string& text);

/// A template estimate: the curve, and which observed curve it is when the
/// estimator selects one.
struct Estimate {
  SampledCurve curve;
  std::optional<std::size_t> chosen_index;
};

struct NamedEstimator {
  std::string name;
  std::function<Estimate(const GeneratedSample&)> run;
};

/// `isomap_k` = 0 selects default_isomap_k(n) per sample.
NamedEstimator make_estimator(EstimatorKind kind, std::size_t isomap_k = 0,
                              int alpha = 1);

struct ExperimentSpec {
  SimulationSpec simulation;  // n and seed are overridden per run
  std::vector<EstimatorKind> estimators{EstimatorKind::Rme,
                                        EstimatorKind::Isomap,
                                        EstimatorKind::Mbm};
  std::vector<std::size_t> n_values{15, 30, 45, 60};
  std::size_t repetitions = 100;
  std::uint64_t base_seed = 0;
  std::size_t isomap_k = 0;
  int alpha = 1;
  unsigned threads = 1;

  void validate() const;
};

/// Seed of repetition r; independent of n so that runs of different sizes
/// share their leading curves.
std::uint64_t repetition_seed(std::uint64_t base_seed, std::size_t r);

struct CellReport {
  ModelKind simulation;
  std::size_t n;
  std::string estimator;
  MseDecomposition stats;
  std::vector<std::optional<std::size_t>> chosen_indices;  // per repetition
};

struct EvaluationReport {
  std::vector<std::uint64_t> repetition_seeds;
  std::vector<CellReport> cells;  // ordered by n, then estimator

  const CellReport& cell(std::size_t n, const std::string& estimator) const;
};

/// A failed repetition, naming the simulation, n, repetition and estimator.
class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

EvaluationReport run_experiment(const ExperimentSpec& spec);
EvaluationReport run_experiment(const ExperimentSpec& spec,
                                std::span<const NamedEstimator> estimators);

/// simulation,n,estimator,mse,bias2,variance
void write_report_csv(std::ostream& out, const EvaluationReport& report);
nlohmann::json to_json(const EvaluationReport& report);

struct ConvergenceRow {
  std::size_t n;
  double median_hausdorff;
  std::vector<double> hausdorff;  // per seed
};

struct ConvergenceSpec {
  std::vector<std::size_t> n_values{10, 30, 100};
  std::vector<std::uint64_t> seeds;
  double noise_sd = 0.1;
  double step = 0.005;
  std::size_t manifold_points = 4001;
};

/// Dense sample of the noise-free locus {(t, 2 t^2) : t in [-1, 1]}.
std::vector<std::vector<double>> parabola_locus(std::size_t points);

/// Hausdorff distance between the robust graph of a parabola cloud and the
/// parabola, per n and seed.
std::vector<ConvergenceRow> convergence_study(const ConvergenceSpec& spec);

void write_convergence_csv(std::ostream& out,
                           std::span<const ConvergenceRow> rows);

}  // namespace rme
