#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdtc/observables.hpp"
#include "fdtc/synth.hpp"
#include "json.hpp"

namespace fdtc {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ExperimentKind { DescribeCode, Dynamics, Spectral, SGOrder, Correlators, PhaseSweep, SynthVerify };

std::string to_string(ExperimentKind k);
ExperimentKind experiment_from_string(const std::string& text);

struct DynamicsOptions {
  std::size_t periods = 50;
  std::vector<std::string> observables{"Zbar", "Xbar"};
  InitialState initial{PauliLetter::Y, 0.0};
};

/// Each point h sets h_x_row1 = h_z_col1 = h and both bulk means to h + pi/2
/// (DTC2T), or every h_z mean to h/2 (CNOT4T). Half-widths are kept.
struct SweepOptions {
  std::vector<double> hbar_over_pi;
  SpectralConfig spectral;
  double threshold = 0.8;
};

struct CorrelatorOptions {
  std::size_t points = 200;
  double floor = 0.1;
};

struct SynthOptions {
  std::string builtin;  // backend:type:i,j
  std::string circuit;  // path to a circuit file
  Backend backend = Backend::NativeTwoQubit;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::size_t max_patch = 6;
};

struct BuiltinSpec {
  Backend backend = Backend::NativeTwoQubit;
  StabilizerType type = StabilizerType::SZ;
  Site corner;
};

/// Parses "backend:type:i,j", e.g. "native:SZ:1,1".
BuiltinSpec parse_builtin_spec(const std::string& text);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Dynamics;
  LatticeSpec lattice{2, 2, Boundary::Open};
  DisorderSpec disorder;
  Regime regime = Regime::DTC2T;
  std::size_t realizations = 1;
  std::uint64_t seed = 0;
  DynamicsOptions dynamics;
  SweepOptions sweep;
  CorrelatorOptions correlators;
  SynthOptions synth;
  std::filesystem::path output = "fdtc_out";
  std::size_t workers = 1;

  /// Throws std::invalid_argument on any inconsistency.
  void validate() const;
  /// Normalized JSON form; angles in radians. Worker count and output path
  /// are included only when `with_runtime` is set.
  nlohmann::json to_json(bool with_runtime = true) const;
};

/// Parses a JSON config, rejecting unknown keys. Angles accept numbers
/// (radians) or strings such as "0.45pi".
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Angle from a JSON number (radians) or a string like "0.45pi" or "pi/4".
double json_angle(const nlohmann::json& j);

struct Preset {
  std::string name;
  std::string description;
  ExperimentConfig config;
};

std::vector<Preset> list_presets();
/// Throws std::invalid_argument for an unknown name.
ExperimentConfig preset_config(const std::string& name);

/// Disorder with the sweep relation applied at h = hbar_over_pi * pi.
DisorderSpec sweep_disorder(const DisorderSpec& base, Regime regime, double hbar_over_pi);

/// Resolves Zbar/Xbar (first logical), Zbar1/Xbar1, Zbar2/Xbar2 or an explicit
/// Pauli string such as "X@(1,1) X@(2,1)".
NamedObservable resolve_observable(const StabilizerCode& code, const std::string& name);

/// CSV tables with a '#' header block; numbers printed with %.17g.
struct CsvTable {
  std::vector<std::string> header_lines;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string render() const;
};

std::string format_number(double v);

/// Parsed CSV: comment lines, column names and string cells.
CsvTable parse_csv(const std::string& text);

std::vector<std::string> config_echo(const ExperimentConfig& config);

CsvTable dynamics_table(const ExperimentConfig& config, const std::vector<DiagnosticSeries>& series);
CsvTable correlator_table(const ExperimentConfig& config, const CorrelatorSeries& series);

struct SweepPoint {
  double hbar_over_pi = 0.0;
  PhaseMetrics metrics;
};

CsvTable sweep_table(const ExperimentConfig& config, const std::vector<SweepPoint>& points);

std::string sha256_hex(const std::string& bytes);

/// Writes via a temporary file in the same directory and renames it.
void write_atomic(const std::filesystem::path& path, const std::string& bytes);

struct RunResult {
  int exit_code = 0;
  std::map<std::string, std::filesystem::path> files;  // role -> path
  nlohmann::json summary;
};

/// Validates, computes, writes CSV + manifest.json into config.output.
/// Throws std::invalid_argument (config), CapacityError or NumericalError.
RunResult run_experiment(const ExperimentConfig& config);

}  // namespace fdtc
