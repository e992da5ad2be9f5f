#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fdtc/harness.hpp"

namespace fdtc {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

EnsembleSpec ensemble_for(const ExperimentConfig& c, const DisorderSpec& d) {
  EnsembleSpec e;
  e.code = std::make_shared<const StabilizerCode>(build_code(c.lattice));
  e.disorder = d;
  e.realizations = c.realizations;
  e.seed = c.seed;
  e.workers = c.workers;
  return e;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json run_dynamics(const ExperimentConfig& c, std::string& csv) {
  const EnsembleSpec e = ensemble_for(c, c.disorder);
  std::vector<NamedObservable> obs;
  for (const auto& name : c.dynamics.observables) obs.push_back(resolve_observable(*e.code, name));
  const auto series = stroboscopic_dynamics(e, c.dynamics.initial, obs, c.dynamics.periods);
  csv = dynamics_table(c, series).render();
  json s;
  for (const auto& d : series) s[d.observable] = {{"final_mean", d.mean.back()}};
  return s;
}

json run_sweep(const ExperimentConfig& c, std::string& csv) {
  std::vector<SweepPoint> points;
  if (c.sweep.hbar_over_pi.empty()) {
    points.push_back({c.disorder.h_x_row1.mean / kPi, phase_metrics(ensemble_for(c, c.disorder), c.sweep.spectral,
                                                                    c.sweep.threshold)});
  } else {
    for (double h : c.sweep.hbar_over_pi) {
      const EnsembleSpec e = ensemble_for(c, sweep_disorder(c.disorder, c.regime, h));
      points.push_back({h, phase_metrics(e, c.sweep.spectral, c.sweep.threshold)});
    }
  }
  csv = sweep_table(c, points).render();
  json s = json::array();
  for (const auto& p : points) s.push_back({{"hbar_over_pi", p.hbar_over_pi}, {"phase", to_string(p.metrics.phase)}});
  return s;
}

json run_correlators(const ExperimentConfig& c, std::string& csv) {
  const EnsembleSpec e = ensemble_for(c, c.disorder);
  const auto series = correlator_dynamics(e, uniform_time_grid(c.correlators.points), c.correlators.floor);
  csv = correlator_table(c, series).render();
  json peaks;
  for (std::size_t f = 0; f < series.names.size(); ++f) {
    double m = 0.0;
    for (double v : series.mean[f]) m = std::max(m, std::abs(v));
    peaks[series.names[f]] = m;
  }
  return {{"crossings_h", series.crossings_h}, {"crossings_v", series.crossings_v}, {"max_abs", peaks}};
}

json run_synth(const ExperimentConfig& c, std::string& csv, bool& passed) {
  SynthesisChain chain;
  if (!c.synth.builtin.empty()) {
    const BuiltinSpec b = parse_builtin_spec(c.synth.builtin);
    chain = builtin_chain(b.backend, b.type, b.corner, c.lattice);
  } else {
    chain = parse_chain(read_file(c.synth.circuit), c.lattice, c.synth.backend);
  }
  const SymbolicResult sym = verify_symbolic(chain);
  CsvTable t{config_echo(c), {"trial", "theta", "error"}, {}};
  SplitMix64 rng(c.synth.seed);
  double worst = 0.0;
  for (std::size_t k = 0; k < c.synth.trials; ++k) {
    const double theta = rng.uniform() * kPi;
    const double err = verify_numeric(chain, theta, c.synth.max_patch);
    worst = std::max(worst, err);
    t.rows.push_back({std::to_string(k), format_number(theta), format_number(err)});
  }
  csv = t.render();
  passed = sym.passed && worst < 1e-10;
  json axes = json::array();
  for (const auto& a : sym.final_axes) axes.push_back(format_pauli(a, c.lattice));
  json s{{"symbolic_passed", sym.passed},
         {"signs", sym.signs},
         {"final_axes", axes},
         {"max_numeric_error", worst},
         {"passed", passed}};
  if (sym.divergence) s["divergence"] = *sym.divergence;
  return s;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.kind == ExperimentKind::DescribeCode) {
    throw std::invalid_argument("describe-code writes no result files");
  }
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  std::string csv;
  std::string file;
  bool passed = true;
  switch (config.kind) {
    case ExperimentKind::Dynamics:
      result.summary = run_dynamics(config, csv);
      file = "dynamics.csv";
      break;
    case ExperimentKind::Spectral:
    case ExperimentKind::SGOrder:
    case ExperimentKind::PhaseSweep:
      result.summary = run_sweep(config, csv);
      file = "sweep.csv";
      break;
    case ExperimentKind::Correlators:
      result.summary = run_correlators(config, csv);
      file = "correlators.csv";
      break;
    case ExperimentKind::SynthVerify:
      result.summary = run_synth(config, csv, passed);
      file = "synth.csv";
      break;
    case ExperimentKind::DescribeCode:
      break;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const auto csv_path = config.output / file;
  write_atomic(csv_path, csv);
  result.files["csv"] = csv_path;

  json sub = json::array();
  if (config.kind != ExperimentKind::SynthVerify) {
    for (std::size_t r = 0; r < config.realizations; ++r) sub.push_back(realization_seed(config.seed, r));
  }
  json manifest{{"tool", "fdtc"},
                {"version", kToolVersion},
                {"experiment", to_string(config.kind)},
                {"config", config.to_json(true)},
                {"seed", config.kind == ExperimentKind::SynthVerify ? config.synth.seed : config.seed},
                {"sub_seeds", sub},
                {"workers", config.workers},
                {"wall_time_seconds", wall},
                {"outputs", {{file, {{"sha256", sha256_hex(csv)}, {"bytes", csv.size()}}}}},
                {"summary", result.summary}};
  const auto manifest_path = config.output / "manifest.json";
  write_atomic(manifest_path, manifest.dump(2) + "\n");
  result.files["manifest"] = manifest_path;
  result.exit_code = passed ? 0 : 1;
  return result;
}

}  // namespace fdtc
