#include "fdtc/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <lapacke.h>

namespace fdtc {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void check_instance(const ModelInstance& inst) {
  if (!inst.code) throw std::invalid_argument("model instance has no code");
  inst.params.check_shape(*inst.code);
}

void recurse_sectors(const Eigen::VectorXcd& v, const std::vector<PauliString>& ops,
                     const std::vector<PauliString>& all, std::size_t depth, double floor,
                     std::vector<SectorComponent>& out) {
  const double w = v.squaredNorm();
  if (w < floor) return;
  if (depth == ops.size()) {
    SectorComponent c;
    c.weight = w;
    c.signs.reserve(all.size());
    for (const auto& g : all) c.signs.push_back(expectation(v, g).real() / w > 0 ? 1 : -1);
    out.push_back(std::move(c));
    return;
  }
  Eigen::VectorXcd pv = v;
  apply_pauli(pv, ops[depth]);
  recurse_sectors(0.5 * (v + pv), ops, all, depth + 1, floor, out);
  recurse_sectors(0.5 * (v - pv), ops, all, depth + 1, floor, out);
}

}  // namespace

double fold_quasienergy(double eps) {
  double r = std::remainder(eps, 2 * kPi);  // in [-pi, pi]
  if (r <= -kPi) r += 2 * kPi;
  return r;
}

void DriveParameters::check_shape(const StabilizerCode& code) const {
  if (h_x.size() != code.qubit_count() || h_z.size() != code.qubit_count()) {
    throw std::invalid_argument("field arrays do not match the lattice size");
  }
  if (couplings.size() != code.generators().size()) {
    throw std::invalid_argument("coupling array does not match the generator count");
  }
}

DriveParameters DriveParameters::zeros(const StabilizerCode& code) {
  DriveParameters p;
  p.h_x.assign(code.qubit_count(), 0.0);
  p.h_z.assign(code.qubit_count(), 0.0);
  p.couplings.assign(code.generators().size(), 0.0);
  return p;
}

void apply_stabilizer_layer(Eigen::Ref<Eigen::MatrixXcd> m, const ModelInstance& inst, double scale) {
  const auto& gens = inst.code->generators();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    apply_pauli_rotation(m, scale * inst.params.couplings[k], gens[k].op);
  }
}

void apply_z_layer(Eigen::Ref<Eigen::MatrixXcd> m, const ModelInstance& inst, double scale) {
  for (std::size_t q = 0; q < inst.qubit_count(); ++q) {
    apply_pauli_rotation(m, scale * inst.params.h_z[q], PauliString::single(q, PauliLetter::Z));
  }
}

void apply_x_layer(Eigen::Ref<Eigen::MatrixXcd> m, const ModelInstance& inst, double scale) {
  for (std::size_t q = 0; q < inst.qubit_count(); ++q) {
    apply_pauli_rotation(m, scale * inst.params.h_x[q], PauliString::single(q, PauliLetter::X));
  }
}

void evolve_period(Eigen::Ref<Eigen::MatrixXcd> m, const ModelInstance& inst) {
  check_instance(inst);
  apply_stabilizer_layer(m, inst);
  apply_z_layer(m, inst);
  apply_x_layer(m, inst);
}

void evolve_period(StateVector& state, const ModelInstance& inst) {
  evolve_period(state.amplitudes(), inst);
}

void evolve_within_period(Eigen::Ref<Eigen::MatrixXcd> m, const ModelInstance& inst, double t) {
  if (!(t > 0.0 && t <= kPeriod)) throw std::invalid_argument("t must lie in (0, T]");
  check_instance(inst);
  const double f = t / kPeriod;
  apply_stabilizer_layer(m, inst, clamp01(3 * f));
  if (3 * f > 1.0) apply_z_layer(m, inst, clamp01(3 * f - 1.0));
  if (3 * f > 2.0) apply_x_layer(m, inst, clamp01(3 * f - 2.0));
}

void evolve_within_period(StateVector& state, const ModelInstance& inst, double t) {
  evolve_within_period(state.amplitudes(), inst, t);
}

double unitarity_error(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd g = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return g.cwiseAbs().maxCoeff();
}

FloquetUnitary build_floquet_unitary(const ModelInstance& inst) {
  check_instance(inst);
  check_qubit_cap(inst.qubit_count());
  const Eigen::Index dim = Eigen::Index{1} << inst.qubit_count();
  FloquetUnitary u;
  u.matrix = Eigen::MatrixXcd::Identity(dim, dim);
  evolve_period(u.matrix, inst);
  if (const double err = unitarity_error(u.matrix); !(err < 1e-9)) {
    throw NumericalError("Floquet operator failed unitarity check (error " + std::to_string(err) + ")");
  }
  return u;
}

QuasienergySpectrum diagonalize(const Eigen::MatrixXcd& u, double degeneracy_tol) {
  if (u.rows() != u.cols()) throw std::invalid_argument("matrix is not square");
  if (const double err = unitarity_error(u); !(err < 1e-9)) {
    throw NumericalError("cannot diagonalize: matrix is not unitary (error " + std::to_string(err) + ")");
  }
  const Eigen::Index dim = u.rows();
  Eigen::MatrixXcd t = u;
  Eigen::MatrixXcd q(dim, dim);
  Eigen::VectorXcd w(dim);
  lapack_int sdim = 0;
  const auto ld = static_cast<lapack_int>(dim);
  const lapack_int info = LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, ld,
                                        reinterpret_cast<lapack_complex_double*>(t.data()), ld, &sdim,
                                        reinterpret_cast<lapack_complex_double*>(w.data()),
                                        reinterpret_cast<lapack_complex_double*>(q.data()), ld);
  if (info != 0) throw NumericalError("Schur decomposition failed (info " + std::to_string(info) + ")");

  std::vector<double> eps(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) eps[static_cast<std::size_t>(k)] = fold_quasienergy(-std::arg(w(k)));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return eps[static_cast<std::size_t>(a)] < eps[static_cast<std::size_t>(b)];
  });

  QuasienergySpectrum s;
  s.quasienergies.resize(dim);
  s.vectors.resize(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    s.quasienergies(n) = eps[static_cast<std::size_t>(order[static_cast<std::size_t>(n)])];
    s.vectors.col(n) = q.col(order[static_cast<std::size_t>(n)]);
  }

  // Gram-Schmidt inside clusters of nearly equal quasienergy.
  Eigen::Index start = 0;
  while (start < dim) {
    Eigen::Index end = start + 1;
    while (end < dim && s.quasienergies(end) - s.quasienergies(end - 1) < degeneracy_tol) ++end;
    for (Eigen::Index a = start; a < end; ++a) {
      for (Eigen::Index b = start; b < a; ++b) {
        s.vectors.col(a) -= s.vectors.col(b).dot(s.vectors.col(a)) * s.vectors.col(b);
      }
      s.vectors.col(a).normalize();
    }
    start = end;
  }

  const Eigen::MatrixXcd phases =
      (-std::complex<double>(0, 1) * s.quasienergies.cast<std::complex<double>>()).array().exp().matrix();
  const Eigen::MatrixXcd resid = u * s.vectors - s.vectors * phases.asDiagonal();
  if (const double err = resid.cwiseAbs().maxCoeff(); !(err < 1e-8)) {
    throw NumericalError("eigenvector residual too large (" + std::to_string(err) + ")");
  }
  return s;
}

QuasienergySpectrum diagonalize(const FloquetUnitary& u) { return diagonalize(u.matrix); }

void project(Eigen::VectorXcd& state, const std::vector<PauliString>& ops, const std::vector<int>& signs) {
  if (ops.size() != signs.size()) throw std::invalid_argument("one sign per operator required");
  for (std::size_t k = 0; k < ops.size(); ++k) {
    Eigen::VectorXcd pv = state;
    apply_pauli(pv, ops[k]);
    state = 0.5 * (state + static_cast<double>(signs[k]) * pv);
  }
}

std::vector<SectorComponent> sector_decompose(const StateVector& state, const StabilizerCode& code,
                                              double floor) {
  const auto all = code.generator_ops();
  std::vector<PauliString> independent;
  for (auto k : gf2_independent_subset(all)) independent.push_back(all[k]);
  std::vector<SectorComponent> out;
  recurse_sectors(state.amplitudes(), independent, all, 0, floor, out);
  return out;
}

StateVector logical_basis_state(const StabilizerCode& code, const std::vector<int>& bits) {
  if (bits.size() != code.logicals().size()) {
    throw std::invalid_argument("need one bit per logical qubit");
  }
  StateVector s(code.qubit_count());
  std::vector<PauliString> ops = code.generator_ops();
  for (const auto& l : code.logicals()) ops.push_back(l.z);
  project(s.amplitudes(), ops, std::vector<int>(ops.size(), 1));
  s.normalize();
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != 0) apply_pauli(s, code.logicals()[k].x);
  }
  return s;
}

}  // namespace fdtc
