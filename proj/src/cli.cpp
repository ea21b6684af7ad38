#include "rme/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "rme/csv_io.hpp"
#include "rme/estimators.hpp"
#include "rme/evaluation.hpp"
#include "rme/format.hpp"
#include "rme/geodesic_graph.hpp"

namespace rme::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + path + "'");
  body(file);
  if (!file) throw IoError("write failed for '" + path + "'");
}

template <typename Kind, typename Parse>
std::vector<Kind> parse_list(const std::vector<std::string>& items,
                             Parse parse) {
  std::vector<Kind> out;
  for (const auto& item : items) {
    try {
      out.push_back(parse(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

ModelKind parse_model(const std::string& text) {
  try {
    return parse_model_kind(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// --- simulate ---------------------------------------------------------------

struct SimulateOptions {
  std::string sim = "1";
  std::size_t n = 30;
  std::size_t m = 100;
  double low = -10.0;
  double high = 10.0;
  std::uint64_t seed = 0;
  double outliers = 0.0;
  double phi = 0.9;
  double noise = 0.1;
  std::string output;
  std::string meta;
};

void cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  const ModelKind model = parse_model(o.sim);
  if (model == ModelKind::ParabolaCloud) {
    // Points are stored in the curve layout: t indexes the coordinate.
    const auto cloud = generate_parabola_cloud(o.n, o.seed, o.noise);
    std::vector<std::vector<double>> columns;
    for (const auto& p : cloud) columns.push_back({p.x, p.y});
    const CurveSet set(Grid({1.0, 2.0}), std::move(columns));
    emit(o.output, out, [&](std::ostream& s) { write_curve_csv(s, set); });
    return;
  }
  SimulationSpec spec;
  spec.model = model;
  spec.n = o.n;
  spec.m = o.m;
  spec.interval = {o.low, o.high};
  spec.seed = o.seed;
  spec.outlier_fraction = o.outliers;
  spec.phi = o.phi;
  const GeneratedSample sample = generate(spec);
  emit(o.output, out,
       [&](std::ostream& s) { write_curve_csv(s, sample.curves); });
  if (!o.meta.empty()) {
    nlohmann::json params = nlohmann::json::array();
    for (const auto& p : sample.warp_params) {
      params.push_back({{"amplitude", p.amplitude},
                        {"scale", p.scale},
                        {"shift", p.shift},
                        {"offset", p.offset}});
    }
    const std::vector<double> truth(sample.template_curve.values().begin(),
                                    sample.template_curve.values().end());
    const nlohmann::json meta{{"simulation", to_string(model)},
                              {"seed", o.seed},
                              {"template", truth},
                              {"warp_params", std::move(params)},
                              {"atypical_indices", sample.atypical_indices}};
    emit(o.meta, out, [&](std::ostream& s) { s << meta.dump(2) << '\n'; });
  }
}

// --- estimate ---------------------------------------------------------------

struct EstimateOptions {
  std::string input;
  std::string estimator = "rme";
  std::size_t k = 0;
  int alpha = 1;
  unsigned threads = 1;
  std::string output;
  std::string curve_output;
};

void cmd_estimate(const EstimateOptions& o, std::ostream& out) {
  std::vector<EstimatorKind> kinds;
  if (o.estimator == "all") {
    kinds = {EstimatorKind::Rme, EstimatorKind::Isomap, EstimatorKind::Mbm,
             EstimatorKind::Mean};
  } else {
    kinds = parse_list<EstimatorKind>({o.estimator}, parse_estimator_kind);
  }
  const FrechetConfig config{o.alpha};
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const CurveSet curves = ingest_csv(o.input);
  nlohmann::json results = nlohmann::json::array();
  std::vector<std::vector<double>> chosen;
  std::vector<std::string> names;
  for (auto kind : kinds) {
    names.push_back(to_string(kind));
    if (kind == EstimatorKind::Mean) {
      const auto mean = cross_sectional_mean(curves);
      chosen.emplace_back(mean.values().begin(), mean.values().end());
      results.push_back({{"estimator", "mean"},
                         {"chosen_index", nullptr},
                         {"objective_values", nlohmann::json::array()},
                         {"excluded_indices", nlohmann::json::array()}});
      continue;
    }
    EstimateResult result;
    switch (kind) {
      case EstimatorKind::Rme:
        result = rme_median(curves, config, o.threads);
        break;
      case EstimatorKind::Isomap: {
        const std::size_t k =
            o.k == 0 ? default_isomap_k(curves.count()) : o.k;
        result = isomap_median(curves, k, config);
        break;
      }
      case EstimatorKind::Mbm:
        result = mbm_median(curves);
        break;
      case EstimatorKind::Mean:
        break;
    }
    const auto values = curves.values(result.chosen_index);
    chosen.emplace_back(values.begin(), values.end());
    results.push_back(to_json(result));
  }

  const nlohmann::json doc{{"input", o.input}, {"results", std::move(results)}};
  emit(o.output, out, [&](std::ostream& s) { s << doc.dump(2) << '\n'; });
  if (!o.curve_output.empty()) {
    const CurveSet templates(curves.grid(), std::move(chosen), std::move(names));
    emit(o.curve_output, out,
         [&](std::ostream& s) { write_curve_csv(s, templates); });
  }
}

// --- distances --------------------------------------------------------------

struct DistancesOptions {
  std::string input;
  std::string output;
  std::string dump_edges;
  unsigned threads = 1;
};

void cmd_distances(const DistancesOptions& o, std::ostream& out) {
  const CurveSet curves = ingest_csv(o.input);
  const auto points = to_points(curves);
  const RobustGraph g = robust_graph(points, o.threads);
  const GeodesicMatrix geodesics = shortest_path_distances(g.graph, o.threads);
  emit(o.output, out,
       [&](std::ostream& s) { write_matrix_csv(s, geodesics); });
  if (!o.dump_edges.empty()) {
    emit(o.dump_edges, out,
         [&](std::ostream& s) { write_edge_list(s, g.graph); });
  }
}

// --- evaluate ---------------------------------------------------------------

struct EvaluateOptions {
  std::string sim = "1";
  std::vector<std::size_t> n_values{15, 30, 45, 60};
  std::size_t reps = 100;
  std::uint64_t seed = 0;
  std::vector<std::string> estimators{"rme", "isomap", "mbm"};
  double outliers = 0.0;
  std::size_t m = 100;
  double phi = 0.9;
  std::size_t k = 0;
  int alpha = 1;
  unsigned threads = 1;
  std::string csv;
  std::string json;
};

void cmd_evaluate(const EvaluateOptions& o, std::ostream& out) {
  ExperimentSpec spec;
  spec.simulation.model = parse_model(o.sim);
  if (spec.simulation.model == ModelKind::ParabolaCloud) {
    throw UsageError("evaluate needs a curve model (1-4)");
  }
  spec.simulation.m = o.m;
  spec.simulation.outlier_fraction = o.outliers;
  spec.simulation.phi = o.phi;
  spec.estimators =
      parse_list<EstimatorKind>(o.estimators, parse_estimator_kind);
  spec.n_values = o.n_values;
  spec.repetitions = o.reps;
  spec.base_seed = o.seed;
  spec.isomap_k = o.k;
  spec.alpha = o.alpha;
  spec.threads = o.threads;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const EvaluationReport report = run_experiment(spec);
  emit(o.csv, out, [&](std::ostream& s) { write_report_csv(s, report); });
  if (!o.json.empty()) {
    emit(o.json, out,
         [&](std::ostream& s) { s << to_json(report).dump(2) << '\n'; });
  }
}

// --- converge ---------------------------------------------------------------

struct ConvergeOptions {
  std::vector<std::size_t> n_values{10, 30, 100};
  std::size_t seeds = 20;
  std::uint64_t seed = 0;
  double noise = 0.1;
  double step = 0.005;
  std::string output;
  std::string json;
};

void cmd_converge(const ConvergeOptions& o, std::ostream& out) {
  ConvergenceSpec spec;
  spec.n_values = o.n_values;
  spec.noise_sd = o.noise;
  spec.step = o.step;
  for (std::size_t s = 0; s < o.seeds; ++s) {
    spec.seeds.push_back(repetition_seed(o.seed, s));
  }
  const auto rows = convergence_study(spec);
  emit(o.output, out,
       [&](std::ostream& s) { write_convergence_csv(s, rows); });
  if (!o.json.empty()) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& row : rows) {
      doc.push_back({{"n", row.n},
                     {"median_hausdorff", row.median_hausdorff},
                     {"hausdorff", row.hausdorff}});
    }
    emit(o.json, out, [&](std::ostream& s) { s << doc.dump(2) << '\n'; });
  }
}

void report_error(std::ostream& err, const std::string& kind,
                  const std::string& message) {
  const nlohmann::json doc{{"error", {{"kind", kind}, {"message", message}}}};
  err << doc.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Template curve estimation on a robust geodesic graph"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Draw a simulated sample");
  simulate->add_option("--sim", sim.sim, "Model: 1, 2, 3, 4 or parabola")
      ->capture_default_str();
  simulate->add_option("--n", sim.n, "Number of curves")->capture_default_str();
  simulate->add_option("--m", sim.m, "Grid size")->capture_default_str();
  simulate->add_option("--low", sim.low, "Interval start")->capture_default_str();
  simulate->add_option("--high", sim.high, "Interval end")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")->required();
  simulate->add_option("--outliers", sim.outliers, "Atypical fraction")
      ->capture_default_str();
  simulate->add_option("--phi", sim.phi, "Sim4 slope")->capture_default_str();
  simulate->add_option("--noise", sim.noise, "Parabola noise sd")
      ->capture_default_str();
  simulate->add_option("-o,--output", sim.output, "Curve CSV (default stdout)");
  simulate->add_option("--meta", sim.meta,
                       "JSON with template, warp parameters, atypical indices");

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "Estimate a template curve");
  estimate->add_option("-i,--input", est.input, "Curve CSV")->required();
  estimate->add_option("--estimator", est.estimator,
                       "rme, isomap, mbm, mean or all")
      ->capture_default_str();
  estimate->add_option("--k", est.k, "Isomap neighbours (0: default rule)");
  estimate->add_option("--alpha", est.alpha, "Frechet power (1 or 2)")
      ->capture_default_str();
  estimate->add_option("--threads", est.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  estimate->add_option("-o,--output", est.output, "Result JSON (default stdout)");
  estimate->add_option("--curve-output", est.curve_output,
                       "CSV with the selected template curve(s)");

  DistancesOptions dist;
  auto* distances =
      app.add_subcommand("distances", "Approximate geodesic distance matrix");
  distances->add_option("-i,--input", dist.input, "Curve CSV")->required();
  distances->add_option("-o,--output", dist.output, "Matrix CSV (default stdout)");
  distances->add_option("--dump-edges", dist.dump_edges, "Edge list file");
  distances->add_option("--threads", dist.threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  EvaluateOptions ev;
  auto* evaluate = app.add_subcommand("evaluate", "Monte Carlo MSE study");
  evaluate->add_option("--sim", ev.sim, "Model: 1, 2, 3 or 4")
      ->capture_default_str();
  evaluate->add_option("--n", ev.n_values, "Sample sizes")->delimiter(',');
  evaluate->add_option("--reps", ev.reps, "Repetitions")->capture_default_str();
  evaluate->add_option("--seed", ev.seed, "Base seed")->required();
  evaluate->add_option("--estimators", ev.estimators, "Estimator tags")
      ->delimiter(',');
  evaluate->add_option("--outliers", ev.outliers, "Atypical fraction")
      ->capture_default_str();
  evaluate->add_option("--m", ev.m, "Grid size")->capture_default_str();
  evaluate->add_option("--phi", ev.phi, "Sim4 slope")->capture_default_str();
  evaluate->add_option("--k", ev.k, "Isomap neighbours (0: default rule)");
  evaluate->add_option("--alpha", ev.alpha, "Frechet power (1 or 2)");
  evaluate->add_option("--threads", ev.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--csv", ev.csv, "Summary CSV (default stdout)");
  evaluate->add_option("--json", ev.json, "Per-repetition JSON");

  ConvergeOptions cv;
  auto* converge =
      app.add_subcommand("converge", "Graph-to-parabola Hausdorff study");
  converge->add_option("--n", cv.n_values, "Cloud sizes")->delimiter(',');
  converge->add_option("--seeds", cv.seeds, "Seeds per size")
      ->capture_default_str();
  converge->add_option("--seed", cv.seed, "Base seed")->required();
  converge->add_option("--noise", cv.noise, "Noise sd")->capture_default_str();
  converge->add_option("--step", cv.step, "Edge discretization step")
      ->capture_default_str();
  converge->add_option("-o,--output", cv.output, "CSV (default stdout)");
  converge->add_option("--json", cv.json, "Per-seed JSON");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return kUsage;
  }

  try {
    if (*simulate) cmd_simulate(sim, out);
    if (*estimate) cmd_estimate(est, out);
    if (*distances) cmd_distances(dist, out);
    if (*evaluate) cmd_evaluate(ev, out);
    if (*converge) cmd_converge(cv, out);
  } catch (const UsageError& e) {
    report_error(err, "usage", e.what());
    return kUsage;
  } catch (const IoError& e) {
    report_error(err, "io", e.what());
    return kParse;
  } catch (const NonmonotoneGrid& e) {
    report_error(err, "nonmonotone-grid", e.what());
    return kParse;
  } catch (const ParseError& e) {
    report_error(err, "parse", e.what());
    return kParse;
  } catch (const std::invalid_argument& e) {
    report_error(err, "invalid-argument", e.what());
    return kCompute;
  } catch (const std::exception& e) {
    report_error(err, "compute", e.what());
    return kCompute;
  }
  return kSuccess;
}

}  // namespace rme::cli
