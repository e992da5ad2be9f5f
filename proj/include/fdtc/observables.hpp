#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fdtc/model.hpp"

namespace fdtc {

/// Product state prod_q exp(-i theta P_q) |0...0>; theta = 0 gives |0...0>.
struct InitialState {
  PauliLetter letter = PauliLetter::Y;
  double theta = 0.0;

  StateVector prepare(std::size_t qubits) const;
  std::string label() const;
};

struct EnsembleSpec {
  std::shared_ptr<const StabilizerCode> code;
  DisorderSpec disorder;
  std::size_t realizations = 1;
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  ModelInstance instance(std::size_t r) const;
};

struct NamedObservable {
  std::string name;
  PauliString op;
};

/// Disorder-averaged series over a time grid.
struct DiagnosticSeries {
  std::string observable;
  std::vector<double> grid;
  std::vector<double> mean;
  std::vector<double> sem;
  std::size_t realizations = 0;
  /// Per-realization values, [realization][grid point].
  std::vector<std::vector<double>> samples;
};

/// <O>(nT) for n = 0..n_periods, one series per observable. Throws
/// std::invalid_argument when an observable is not Hermitian.
std::vector<DiagnosticSeries> stroboscopic_dynamics(const EnsembleSpec& ensemble,
                                                    const InitialState& initial,
                                                    const std::vector<NamedObservable>& observables,
                                                    std::size_t n_periods);

struct SpectralQuery {
  std::string name;
  PauliString op;
  double target = 0.0;  // 0 or pi
};

struct SpectralConfig {
  double half_width = 0.05 * 3.14159265358979323846;
  std::size_t sample_size = 32;  // clipped to the Hilbert-space dimension

  void validate() const;
};

struct SpectralTerms {
  double numerator = 0.0;
  double denominator = 0.0;
  double value() const { return denominator > 0.0 ? numerator / denominator : 0.0; }
};

/// Distinct eigenstate indices drawn with a seeded partial shuffle.
std::vector<std::size_t> sample_eigenstates(std::size_t dimension, std::size_t count, std::uint64_t seed);

/// Weight |<eps_m|psi|eps_n>|^2 for n in `sample`, counted when the folded
/// distance between eps_m - eps_n and the target is below the half width.
SpectralTerms spectral_terms(const QuasienergySpectrum& spectrum, const SpectralQuery& query,
                             const std::vector<std::size_t>& sample, double half_width);

struct ScalarDiagnostic {
  std::string name;
  double mean = 0.0;
  double sem = 0.0;
  std::vector<double> samples;
};

enum class LineLetter { X = 0, Y = 1, Z = 2 };

struct SGOrderResult {
  // indexed by LineLetter
  double chi_h[3] = {0, 0, 0};
  double chi_v[3] = {0, 0, 0};
  double chi_local[3] = {0, 0, 0};
  std::string normalization = "pair-count";
};

/// Row string H_{S,j} = prod_i S_{i,j} and column string V_{S,i} = prod_j S_{i,j}.
PauliString row_operator(const LatticeSpec& lat, PauliLetter s, int j);
PauliString column_operator(const LatticeSpec& lat, PauliLetter s, int i);
/// Y_{1,j} prod_{i>=2} Z_{i,j}.
PauliString row_operator_tilde(const LatticeSpec& lat, int j);
/// Y_{i,1} prod_{j>=2} X_{i,j}.
PauliString column_operator_tilde(const LatticeSpec& lat, int i);

/// Mean of |<n|O_a O_b|n>|^2 over distinct line pairs (a, b) and all
/// eigenstates n.
SGOrderResult sg_order(const QuasienergySpectrum& spectrum, const LatticeSpec& lattice);

/// Single-realization metrics from one diagonalization.
struct RealizationMetrics {
  std::vector<double> spectral;  // same order as the queries
  SGOrderResult sg;
};

RealizationMetrics realization_metrics(const ModelInstance& inst, const std::vector<SpectralQuery>& queries,
                                       const SpectralConfig& config, bool with_sg);

/// The four standard queries s_{Z̄,0}, s_{X̄,0}, s_{Z̄,pi}, s_{X̄,pi}.
std::vector<SpectralQuery> standard_queries(const StabilizerCode& code);

enum class PhaseClass { NonlocalDTC, SurfaceCode, Trivial, Ambiguous };

std::string to_string(PhaseClass c);

struct PhaseInputs {
  double s_z0 = 0.0;
  double s_x0 = 0.0;
  double s_zpi = 0.0;
  double s_xpi = 0.0;
};

PhaseClass classify_phase(const PhaseInputs& s, double threshold = 0.8);

struct PhaseMetrics {
  std::vector<ScalarDiagnostic> spectral;  // standard_queries order
  std::vector<ScalarDiagnostic> sg;        // chi_H_X.., chi_V_X.., chi_X..
  PhaseClass phase = PhaseClass::Trivial;
};

/// Ensemble-averaged spectral functions, SG order parameters and phase label.
PhaseMetrics phase_metrics(const EnsembleSpec& ensemble, const SpectralConfig& config,
                           double threshold = 0.8);

/// Named correlator families evaluated by correlator_dynamics.
std::vector<NamedObservable> correlator_families(const LatticeSpec& lat);

struct CorrelatorSeries {
  std::vector<double> t;                    // strictly increasing, ends at 1
  std::vector<std::string> names;           // correlator_families order
  std::vector<std::vector<double>> mean;    // [family][t]
  std::vector<std::vector<std::vector<double>>> samples;  // [realization][family][t]
  std::vector<std::size_t> eigenstates;     // chosen eigenstate index per realization
  int crossings_h = 0;                      // on the mean series
  int crossings_v = 0;
  std::vector<int> realization_crossings_h;
  std::vector<int> realization_crossings_v;
};

/// Uniform grid t_k = k / points, k = 1..points.
std::vector<double> uniform_time_grid(std::size_t points);

/// Sign changes of a - b between neighbouring grid points where both |a| and
/// |b| exceed `floor` at both points.
int count_crossings(const std::vector<double>& a, const std::vector<double>& b, double floor = 0.1);

/// One seeded random Floquet eigenstate per realization, evolved across the
/// period. Each realization's H pair and V pair are sign-aligned so the base
/// correlator is non-negative at t = T before averaging.
CorrelatorSeries correlator_dynamics(const EnsembleSpec& ensemble, const std::vector<double>& grid,
                                     double floor = 0.1);

/// Normalized power |sum_n x_n e^{-i w_k n}|^2 / (N sum x_n^2) at w_k = 2 pi k / N.
std::vector<double> fourier_power(const std::vector<double>& series);
/// Power at angular frequency w (not necessarily on the grid), same normalization.
double fourier_weight(const std::vector<double>& series, double omega);

}  // namespace fdtc
