#include "fdtc/observables.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fdtc/ensemble.hpp"

namespace fdtc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSampleSalt = 0x5350454354524dULL;
constexpr std::uint64_t kPickSalt = 0x434f5252454c41ULL;

PauliLetter to_letter(LineLetter s) {
  switch (s) {
    case LineLetter::X: return PauliLetter::X;
    case LineLetter::Y: return PauliLetter::Y;
    case LineLetter::Z: return PauliLetter::Z;
  }
  return PauliLetter::I;
}

// <n|O|n> for every column n of V.
Eigen::VectorXcd diagonal_elements(const Eigen::MatrixXcd& v, const PauliString& op) {
  Eigen::MatrixXcd pv = v;
  apply_pauli(pv, op);
  return (v.conjugate().cwiseProduct(pv)).colwise().sum().transpose();
}

double mean_abs2_over_pairs(const Eigen::MatrixXcd& v, const std::vector<PauliString>& lines) {
  double acc = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < lines.size(); ++a) {
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      acc += diagonal_elements(v, lines[a] * lines[b]).cwiseAbs2().sum();
      ++pairs;
    }
  }
  if (pairs == 0) return 0.0;
  return acc / (static_cast<double>(pairs) * static_cast<double>(v.cols()));
}

ScalarDiagnostic scalar(const std::string& name, std::vector<double> samples) {
  const auto ms = mean_stderr(samples);
  return ScalarDiagnostic{name, ms.mean, ms.sem, std::move(samples)};
}

}  // namespace

StateVector InitialState::prepare(std::size_t qubits) const {
  StateVector s(qubits);
  if (theta != 0.0) {
    for (std::size_t q = 0; q < qubits; ++q) apply_pauli_rotation(s, theta, PauliString::single(q, letter));
  }
  return s;
}

std::string InitialState::label() const {
  if (theta == 0.0) return "zeros";
  std::ostringstream out;
  out.precision(17);
  out << "rot" << to_char(letter) << "(" << theta << ")";
  return out.str();
}

ModelInstance EnsembleSpec::instance(std::size_t r) const {
  return sample_instance(code, disorder, realization_seed(seed, r));
}

std::vector<DiagnosticSeries> stroboscopic_dynamics(const EnsembleSpec& ensemble,
                                                    const InitialState& initial,
                                                    const std::vector<NamedObservable>& observables,
                                                    std::size_t n_periods) {
  if (n_periods < 1) throw std::invalid_argument("need at least one period");
  for (const auto& o : observables) {
    if (!o.op.is_hermitian()) throw std::invalid_argument("observable '" + o.name + "' is not Hermitian");
  }
  check_qubit_cap(ensemble.code->qubit_count());
  const std::size_t points = n_periods + 1;
  using Table = std::vector<std::vector<double>>;  // [observable][n]
  const auto per = map_realizations<Table>(ensemble.realizations, ensemble.workers, [&](std::size_t r) {
    const ModelInstance inst = ensemble.instance(r);
    StateVector s = initial.prepare(inst.qubit_count());
    Table t(observables.size(), std::vector<double>(points));
    for (std::size_t n = 0; n < points; ++n) {
      if (n > 0) evolve_period(s, inst);
      for (std::size_t k = 0; k < observables.size(); ++k) t[k][n] = expectation(s, observables[k].op).real();
    }
    s.check_norm(1e-8);
    return t;
  });
  std::vector<DiagnosticSeries> out;
  for (std::size_t k = 0; k < observables.size(); ++k) {
    DiagnosticSeries d;
    d.observable = observables[k].name;
    d.realizations = ensemble.realizations;
    for (std::size_t n = 0; n < points; ++n) d.grid.push_back(static_cast<double>(n));
    for (const auto& t : per) d.samples.push_back(t[k]);
    std::vector<double> column(per.size());
    for (std::size_t n = 0; n < points; ++n) {
      for (std::size_t r = 0; r < per.size(); ++r) column[r] = per[r][k][n];
      const auto ms = mean_stderr(column);
      d.mean.push_back(ms.mean);
      d.sem.push_back(ms.sem);
    }
    out.push_back(std::move(d));
  }
  return out;
}

void SpectralConfig::validate() const {
  if (!(half_width > 0.0 && half_width < kPi / 2)) {
    throw std::invalid_argument("spectral bin half-width must lie in (0, pi/2)");
  }
  if (sample_size == 0) throw std::invalid_argument("spectral sample size must be positive");
}

std::vector<std::size_t> sample_eigenstates(std::size_t dimension, std::size_t count, std::uint64_t seed) {
  count = std::min(count, dimension);
  std::vector<std::size_t> idx(dimension);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    const auto pick = k + static_cast<std::size_t>(rng.bounded(dimension - k));
    std::swap(idx[k], idx[pick]);
  }
  idx.resize(count);
  return idx;
}

SpectralTerms spectral_terms(const QuasienergySpectrum& spectrum, const SpectralQuery& query,
                             const std::vector<std::size_t>& sample, double half_width) {
  const Eigen::Index dim = spectrum.vectors.rows();
  Eigen::MatrixXcd cols(dim, static_cast<Eigen::Index>(sample.size()));
  for (std::size_t k = 0; k < sample.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = spectrum.vectors.col(static_cast<Eigen::Index>(sample[k]));
  apply_pauli(cols, query.op);
  const Eigen::MatrixXd w = (spectrum.vectors.adjoint() * cols).cwiseAbs2();
  SpectralTerms t;
  for (std::size_t k = 0; k < sample.size(); ++k) {
    const double en = spectrum.quasienergies(static_cast<Eigen::Index>(sample[k]));
    for (Eigen::Index m = 0; m < dim; ++m) {
      const double weight = w(m, static_cast<Eigen::Index>(k));
      t.denominator += weight;
      if (std::abs(fold_quasienergy(spectrum.quasienergies(m) - en - query.target)) < half_width) {
        t.numerator += weight;
      }
    }
  }
  return t;
}

PauliString row_operator(const LatticeSpec& lat, PauliLetter s, int j) {
  PauliString p;
  for (int i = 1; i <= lat.lx(); ++i) p.set_letter(lat.index(i, j), s);
  return p;
}

PauliString column_operator(const LatticeSpec& lat, PauliLetter s, int i) {
  PauliString p;
  for (int j = 1; j <= lat.ly(); ++j) p.set_letter(lat.index(i, j), s);
  return p;
}

PauliString row_operator_tilde(const LatticeSpec& lat, int j) {
  PauliString p = row_operator(lat, PauliLetter::Z, j);
  p.set_letter(lat.index(1, j), PauliLetter::Y);
  return p;
}

PauliString column_operator_tilde(const LatticeSpec& lat, int i) {
  PauliString p = column_operator(lat, PauliLetter::X, i);
  p.set_letter(lat.index(i, 1), PauliLetter::Y);
  return p;
}

SGOrderResult sg_order(const QuasienergySpectrum& spectrum, const LatticeSpec& lattice) {
  SGOrderResult r;
  for (auto s : {LineLetter::X, LineLetter::Y, LineLetter::Z}) {
    const PauliLetter l = to_letter(s);
    std::vector<PauliString> rows;
    std::vector<PauliString> cols;
    std::vector<PauliString> sites;
    for (int j = 1; j <= lattice.ly(); ++j) rows.push_back(row_operator(lattice, l, j));
    for (int i = 1; i <= lattice.lx(); ++i) cols.push_back(column_operator(lattice, l, i));
    for (std::size_t q = 0; q < lattice.qubit_count(); ++q) sites.push_back(PauliString::single(q, l));
    const auto k = static_cast<std::size_t>(s);
    r.chi_h[k] = mean_abs2_over_pairs(spectrum.vectors, rows);
    r.chi_v[k] = mean_abs2_over_pairs(spectrum.vectors, cols);
    r.chi_local[k] = mean_abs2_over_pairs(spectrum.vectors, sites);
  }
  return r;
}

std::vector<SpectralQuery> standard_queries(const StabilizerCode& code) {
  const auto& l = code.logicals().front();
  return {{"s_Z_0", l.z, 0.0}, {"s_X_0", l.x, 0.0}, {"s_Z_pi", l.z, kPi}, {"s_X_pi", l.x, kPi}};
}

RealizationMetrics realization_metrics(const ModelInstance& inst, const std::vector<SpectralQuery>& queries,
                                       const SpectralConfig& config, bool with_sg) {
  config.validate();
  const QuasienergySpectrum spec = diagonalize(build_floquet_unitary(inst));
  const auto sample = sample_eigenstates(spec.size(), config.sample_size, splitmix64(inst.seed ^ kSampleSalt));
  RealizationMetrics m;
  for (const auto& q : queries) m.spectral.push_back(spectral_terms(spec, q, sample, config.half_width).value());
  if (with_sg) m.sg = sg_order(spec, inst.lattice());
  return m;
}

std::string to_string(PhaseClass c) {
  switch (c) {
    case PhaseClass::NonlocalDTC: return "nonlocal-dtc";
    case PhaseClass::SurfaceCode: return "surface-code";
    case PhaseClass::Trivial: return "trivial";
    case PhaseClass::Ambiguous: return "ambiguous";
  }
  return "?";
}

PhaseClass classify_phase(const PhaseInputs& s, double threshold) {
  const bool dtc = s.s_zpi > threshold && s.s_xpi > threshold;
  const bool surface = s.s_z0 > threshold && s.s_x0 > threshold;
  if (dtc && surface) return PhaseClass::Ambiguous;
  if (dtc) return PhaseClass::NonlocalDTC;
  if (surface) return PhaseClass::SurfaceCode;
  return PhaseClass::Trivial;
}

PhaseMetrics phase_metrics(const EnsembleSpec& ensemble, const SpectralConfig& config, double threshold) {
  check_qubit_cap(ensemble.code->qubit_count());
  const auto queries = standard_queries(*ensemble.code);
  const auto per = map_realizations<RealizationMetrics>(
      ensemble.realizations, ensemble.workers,
      [&](std::size_t r) { return realization_metrics(ensemble.instance(r), queries, config, true); });
  PhaseMetrics out;
  std::vector<double> col(per.size());
  for (std::size_t k = 0; k < queries.size(); ++k) {
    for (std::size_t r = 0; r < per.size(); ++r) col[r] = per[r].spectral[k];
    out.spectral.push_back(scalar(queries[k].name, col));
  }
  static const char* kLetters[3] = {"X", "Y", "Z"};
  auto push = [&](const std::string& prefix, auto getter) {
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::size_t r = 0; r < per.size(); ++r) col[r] = getter(per[r].sg)[s];
      out.sg.push_back(scalar(prefix + kLetters[s], col));
    }
  };
  push("chi_H", [](const SGOrderResult& g) { return g.chi_h; });
  push("chi_V", [](const SGOrderResult& g) { return g.chi_v; });
  push("chi_", [](const SGOrderResult& g) { return g.chi_local; });
  out.phase = classify_phase({out.spectral[0].mean, out.spectral[1].mean, out.spectral[2].mean,
                              out.spectral[3].mean},
                             threshold);
  return out;
}

std::vector<NamedObservable> correlator_families(const LatticeSpec& lat) {
  const int lx = lat.lx();
  const int ly = lat.ly();
  const std::size_t a = lat.index(1, 1);
  const std::size_t b = lat.index(lx, ly);
  auto local = [&](PauliLetter l) { return PauliString::single(a, l) * PauliString::single(b, l); };
  return {
      {"C_H", row_operator(lat, PauliLetter::Z, 1) * row_operator(lat, PauliLetter::Z, ly)},
      {"C_Ht", row_operator_tilde(lat, 1) * row_operator_tilde(lat, ly)},
      {"C_V", column_operator(lat, PauliLetter::X, 1) * column_operator(lat, PauliLetter::X, lx)},
      {"C_Vt", column_operator_tilde(lat, 1) * column_operator_tilde(lat, lx)},
      {"C_XX", local(PauliLetter::X)},
      {"C_YY", local(PauliLetter::Y)},
      {"C_ZZ", local(PauliLetter::Z)},
  };
}

std::vector<double> uniform_time_grid(std::size_t points) {
  if (points == 0) throw std::invalid_argument("time grid needs at least one point");
  std::vector<double> t(points);
  for (std::size_t k = 0; k < points; ++k) t[k] = static_cast<double>(k + 1) / static_cast<double>(points);
  return t;
}

int count_crossings(const std::vector<double>& a, const std::vector<double>& b, double floor) {
  int count = 0;
  for (std::size_t k = 0; k + 1 < a.size() && k + 1 < b.size(); ++k) {
    const bool big = std::abs(a[k]) > floor && std::abs(b[k]) > floor && std::abs(a[k + 1]) > floor &&
                     std::abs(b[k + 1]) > floor;
    if (big && (a[k] - b[k]) * (a[k + 1] - b[k + 1]) < 0.0) ++count;
  }
  return count;
}

CorrelatorSeries correlator_dynamics(const EnsembleSpec& ensemble, const std::vector<double>& grid,
                                     double floor) {
  if (grid.empty()) throw std::invalid_argument("empty time grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0 && grid[k] <= kPeriod) || (k > 0 && !(grid[k] > grid[k - 1]))) {
      throw std::invalid_argument("time grid must be strictly increasing inside (0, T]");
    }
  }
  check_qubit_cap(ensemble.code->qubit_count());
  const auto families = correlator_families(ensemble.code->lattice());
  struct Realization {
    std::vector<std::vector<double>> values;
    std::size_t eigenstate;
  };
  const auto per = map_realizations<Realization>(ensemble.realizations, ensemble.workers, [&](std::size_t r) {
    const ModelInstance inst = ensemble.instance(r);
    const QuasienergySpectrum spec = diagonalize(build_floquet_unitary(inst));
    SplitMix64 rng(splitmix64(inst.seed ^ kPickSalt));
    const auto n = static_cast<std::size_t>(rng.bounded(spec.size()));
    Realization out{std::vector<std::vector<double>>(families.size(), std::vector<double>(grid.size())), n};
    const StateVector eig(inst.qubit_count(), spec.vectors.col(static_cast<Eigen::Index>(n)));
    for (std::size_t k = 0; k < grid.size(); ++k) {
      StateVector s = eig;
      evolve_within_period(s, inst, grid[k]);
      for (std::size_t f = 0; f < families.size(); ++f) out.values[f][k] = expectation(s, families[f].op).real();
    }
    // Align the sign of each nonlocal pair to its base correlator at the last grid point.
    for (std::size_t base : {std::size_t{0}, std::size_t{2}}) {
      if (out.values[base].back() < 0.0) {
        for (std::size_t f = base; f < base + 2; ++f) {
          for (auto& v : out.values[f]) v = -v;
        }
      }
    }
    return out;
  });

  CorrelatorSeries c;
  c.t = grid;
  for (const auto& f : families) c.names.push_back(f.name);
  c.mean.assign(families.size(), std::vector<double>(grid.size()));
  std::vector<double> col(per.size());
  for (std::size_t f = 0; f < families.size(); ++f) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      for (std::size_t r = 0; r < per.size(); ++r) col[r] = per[r].values[f][k];
      c.mean[f][k] = mean_stderr(col).mean;
    }
  }
  for (const auto& p : per) {
    c.samples.push_back(p.values);
    c.eigenstates.push_back(p.eigenstate);
    c.realization_crossings_h.push_back(count_crossings(p.values[0], p.values[1], floor));
    c.realization_crossings_v.push_back(count_crossings(p.values[2], p.values[3], floor));
  }
  c.crossings_h = count_crossings(c.mean[0], c.mean[1], floor);
  c.crossings_v = count_crossings(c.mean[2], c.mean[3], floor);
  return c;
}

std::vector<double> fourier_power(const std::vector<double>& series) {
  const std::size_t n = series.size();
  std::vector<double> p(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) p[k] = fourier_weight(series, 2 * kPi * static_cast<double>(k) / static_cast<double>(n));
  return p;
}

double fourier_weight(const std::vector<double>& series, double omega) {
  if (series.empty()) return 0.0;
  std::complex<double> acc = 0.0;
  double energy = 0.0;
  for (std::size_t n = 0; n < series.size(); ++n) {
    acc += series[n] * std::exp(std::complex<double>(0.0, -omega * static_cast<double>(n)));
    energy += series[n] * series[n];
  }
  if (energy == 0.0) return 0.0;
  return std::norm(acc) / (static_cast<double>(series.size()) * energy);
}

}  // namespace fdtc
