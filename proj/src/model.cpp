#include "fdtc/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdtc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

using cd = std::complex<double>;

double draw(SplitMix64& rng, const FamilyDisorder& f) {
  const double u = rng.uniform();
  return f.mean + f.halfwidth * (2.0 * u - 1.0);
}

// Base of the ideal angle grid for each site.
double x_base(const Site& s) { return s.i == 1 ? kPi / 2 : 0.0; }

double z_base(const Site& s, Regime r) {
  if (r == Regime::CNOT4T) return kPi / 4;
  return s.j == 1 ? kPi / 2 : 0.0;
}

double nearest_on_grid(double value, double base) {
  return base + kPi * std::round((value - base) / kPi);
}

bool odd_half_pi(double angle) {
  const long m = std::lround(angle / (kPi / 2));
  return (m % 2) != 0;
}

cd wrap_deviation(cd xi, double reference) {
  return cd(fold_quasienergy(xi.real() - reference), xi.imag());
}

RelativePhase finish(cd a0, cd a1, double reference, double imperfection, double floor) {
  RelativePhase r;
  r.reference = reference;
  r.imperfection = imperfection;
  if (std::abs(a0) < floor || std::abs(a1) < floor) return r;
  r.defined = true;
  r.xi = cd(0, 1) * std::log(a1 / a0);
  r.value = fold_quasienergy(r.xi.real());
  r.deviation = std::abs(wrap_deviation(r.xi, reference));
  return r;
}

}  // namespace

std::string to_string(Regime r) { return r == Regime::DTC2T ? "dtc2t" : "cnot4t"; }

Regime regime_from_string(const std::string& text) {
  if (text == "dtc2t" || text == "DTC2T") return Regime::DTC2T;
  if (text == "cnot4t" || text == "CNOT4T") return Regime::CNOT4T;
  throw std::invalid_argument("unknown regime '" + text + "' (expected dtc2t|cnot4t)");
}

std::string to_string(PhaseTarget t) {
  switch (t) {
    case PhaseTarget::ZBar: return "zbar";
    case PhaseTarget::XBar: return "xbar";
    case PhaseTarget::ZBar2: return "zbar2";
  }
  return "?";
}

DriveParameters ideal_parameters(const StabilizerCode& code, Regime regime) {
  if (regime == Regime::CNOT4T && !code.lattice().periodic()) {
    throw std::invalid_argument("the CNOT regime needs a periodic (toric) code");
  }
  DriveParameters p = DriveParameters::zeros(code);
  for (std::size_t q = 0; q < code.qubit_count(); ++q) {
    const Site s = code.lattice().site(q);
    p.h_x[q] = x_base(s);
    p.h_z[q] = z_base(s, regime);
  }
  return p;
}

void DisorderSpec::validate() const {
  for (const auto* f : {&h_x_row1, &h_x_bulk, &h_z_col1, &h_z_bulk, &j_bulk, &j_boundary_x, &j_boundary_z}) {
    if (!(f->halfwidth >= 0.0) || !std::isfinite(f->mean)) {
      throw std::invalid_argument("disorder half-widths must be non-negative and means finite");
    }
  }
  if (h_z_corner && !(h_z_corner->halfwidth >= 0.0)) {
    throw std::invalid_argument("disorder half-widths must be non-negative");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t SplitMix64::next() {
  ++counter_;
  return splitmix64(seed_ + counter_ * kGolden);
}

double SplitMix64::uniform() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t SplitMix64::bounded(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("bounded draw needs n > 0");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return v % n;
}

std::uint64_t realization_seed(std::uint64_t seed, std::uint64_t r) {
  return splitmix64(splitmix64(seed) ^ splitmix64(r + kGolden));
}

ModelInstance sample_instance(std::shared_ptr<const StabilizerCode> code, const DisorderSpec& spec,
                              std::uint64_t seed) {
  if (!code) throw std::invalid_argument("sample_instance needs a code");
  spec.validate();
  SplitMix64 rng(seed);
  DriveParameters p = DriveParameters::zeros(*code);
  const auto& lat = code->lattice();
  for (std::size_t q = 0; q < code->qubit_count(); ++q) {
    p.h_x[q] = draw(rng, lat.site(q).i == 1 ? spec.h_x_row1 : spec.h_x_bulk);
  }
  for (std::size_t q = 0; q < code->qubit_count(); ++q) {
    const Site s = lat.site(q);
    const FamilyDisorder& f = (spec.h_z_corner && s.i == 1 && s.j == 1)
                                  ? *spec.h_z_corner
                                  : (s.j == 1 ? spec.h_z_col1 : spec.h_z_bulk);
    p.h_z[q] = draw(rng, f);
  }
  const auto& gens = code->generators();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const FamilyDisorder* f = &spec.j_bulk;
    if (gens[k].family == GeneratorFamily::XBoundary) f = &spec.j_boundary_x;
    if (gens[k].family == GeneratorFamily::ZBoundary) f = &spec.j_boundary_z;
    p.couplings[k] = draw(rng, *f);
  }
  return ModelInstance{std::move(code), std::move(p), seed};
}

void IdealSplit::apply_perturbation(Eigen::Ref<Eigen::MatrixXcd> m) const {
  for (std::size_t q = 0; q < delta_z.size(); ++q) {
    apply_pauli_rotation(m, delta_z[q], PauliString::single(q, PauliLetter::Z));
  }
  for (std::size_t q = 0; q < delta_x.size(); ++q) {
    apply_pauli_rotation(m, delta_x[q], PauliString::single(q, PauliLetter::X));
  }
}

double IdealSplit::imperfection() const {
  double e = 0.0;
  for (double d : delta_x) e = std::max(e, std::abs(std::sin(d)));
  for (double d : delta_z) e = std::max(e, std::abs(std::sin(d)));
  return e;
}

IdealSplit split_ideal(const ModelInstance& inst, Regime regime) {
  inst.params.check_shape(*inst.code);
  if (regime == Regime::CNOT4T && !inst.lattice().periodic()) {
    throw std::invalid_argument("the CNOT regime needs a periodic (toric) code");
  }
  IdealSplit s;
  s.regime = regime;
  s.ideal = inst.params;
  const std::size_t n = inst.qubit_count();
  s.delta_x.resize(n);
  s.delta_z.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    const Site site = inst.lattice().site(q);
    const double rx = nearest_on_grid(inst.params.h_x[q], x_base(site));
    const double rz = nearest_on_grid(inst.params.h_z[q], z_base(site, regime));
    s.ideal.h_x[q] = rx;
    s.ideal.h_z[q] = rz;
    s.delta_x[q] = inst.params.h_x[q] - rx;
    const double dz = inst.params.h_z[q] - rz;
    s.delta_z[q] = odd_half_pi(rx) ? -dz : dz;
  }
  return s;
}

ModelInstance ideal_instance(const ModelInstance& inst, const IdealSplit& split) {
  return ModelInstance{inst.code, split.ideal, inst.seed};
}

RelativePhase relative_phase(const ModelInstance& inst, PhaseTarget target, double floor) {
  const StabilizerCode& code = *inst.code;
  const std::size_t nlog = code.logicals().size();
  const cd i(0, 1);
  if (target == PhaseTarget::ZBar2) {
    const IdealSplit split = split_ideal(inst, Regime::CNOT4T);
    const ModelInstance ideal = ideal_instance(inst, split);
    const Eigen::VectorXcd psi = logical_basis_state(code, std::vector<int>(nlog, 0)).amplitudes();
    Eigen::MatrixXcd orbit(psi.size(), 5);
    orbit.col(0) = psi;
    for (int k = 1; k <= 4; ++k) {
      orbit.col(k) = orbit.col(k - 1);
      evolve_period(orbit.col(k), ideal);
    }
    const cd c = psi.dot(orbit.col(4));
    if (std::abs(c) < 0.5) throw NumericalError("reference state is not a period-4 orbit of the ideal drive");
    const cd nu0 = std::exp(-i * std::arg(c) / 4.0);
    Eigen::VectorXcd target_state = orbit.col(1);
    split.apply_perturbation(target_state);
    cd amp[2];
    for (int m = 0; m < 2; ++m) {
      const cd nu = nu0 * std::pow(i, m);
      Eigen::VectorXcd eps = Eigen::VectorXcd::Zero(psi.size());
      cd w = 1.0;
      for (int k = 0; k < 4; ++k) {
        eps += w * orbit.col(k);
        w *= nu;
      }
      eps /= 2.0;
      amp[m] = eps.dot(target_state);
    }
    return finish(amp[0], amp[1], std::numbers::pi / 2, split.imperfection(), floor);
  }

  const IdealSplit split = split_ideal(inst, Regime::DTC2T);
  std::vector<int> bits(nlog, 0);
  const Eigen::VectorXcd zero = logical_basis_state(code, bits).amplitudes();
  bits[0] = 1;
  const Eigen::VectorXcd one = logical_basis_state(code, bits).amplitudes();
  Eigen::VectorXcd a;
  Eigen::VectorXcd b;
  if (target == PhaseTarget::ZBar) {
    a = zero;
    b = one;
  } else {
    a = (zero + one) / std::sqrt(2.0);
    b = (zero - one) / std::sqrt(2.0);
  }
  const Eigen::VectorXcd plus = (a + i * b) / std::sqrt(2.0);
  const Eigen::VectorXcd minus = (a - i * b) / std::sqrt(2.0);
  Eigen::VectorXcd moved = b;
  split.apply_perturbation(moved);
  return finish(plus.dot(moved), minus.dot(moved), std::numbers::pi, split.imperfection(), floor);
}

double ideal_quasienergy_plus(const ModelInstance& inst) {
  if (inst.lattice().periodic()) {
    throw std::invalid_argument("ideal quasienergy formula applies to the open surface code");
  }
  double sum = 0.0;
  for (double j : inst.params.couplings) sum += j;
  const auto& lat = inst.lattice();
  return fold_quasienergy(sum + (lat.lx() + lat.ly() + 1) * std::numbers::pi / 2);
}

}  // namespace fdtc
