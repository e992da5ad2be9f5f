#include "fdtc/statevector.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

namespace fdtc {

namespace {

using cd = std::complex<double>;

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

// i^{k + #Y}: the scalar in P|b> = c (-1)^{b.z} |b ^ x>.
cd letter_scalar(const PauliString& p) {
  return PauliString::from_masks(0, 0, p.phase_exponent() + std::popcount(p.x_bits() & p.z_bits()))
      .phase();
}

}  // namespace

std::size_t max_qubits() {
  if (const char* env = std::getenv("FDTC_MAX_QUBITS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0 && v <= 30) return static_cast<std::size_t>(v);
    throw CapacityError(std::string("invalid FDTC_MAX_QUBITS value '") + env + "'");
  }
  return kDefaultMaxQubits;
}

void check_qubit_cap(std::size_t qubits) {
  const std::size_t cap = max_qubits();
  if (qubits > cap) {
    throw CapacityError(std::to_string(qubits) + " qubits exceeds the dense-simulation cap of " +
                        std::to_string(cap) + " (set FDTC_MAX_QUBITS to override)");
  }
}

StateVector::StateVector(std::size_t qubits) : qubits_(qubits) {
  check_qubit_cap(qubits);
  amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << qubits);
  amps_(0) = 1.0;
}

StateVector::StateVector(std::size_t qubits, Eigen::VectorXcd amplitudes)
    : qubits_(qubits), amps_(std::move(amplitudes)) {
  check_qubit_cap(qubits);
  if (amps_.size() != (Eigen::Index{1} << qubits)) {
    throw std::invalid_argument("amplitude count does not match qubit count");
  }
}

void StateVector::check_norm(double tol) const {
  const double n = norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
    throw NumericalError("state norm drifted to " + std::to_string(n));
  }
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0 || !std::isfinite(n)) throw NumericalError("cannot normalize a null state");
  amps_ /= n;
}

void apply_pauli(Eigen::Ref<Eigen::MatrixXcd> m, const PauliString& p) {
  const std::uint64_t x = p.x_bits();
  const std::uint64_t z = p.z_bits();
  const cd c = letter_scalar(p);
  const auto dim = static_cast<std::uint64_t>(m.rows());
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    cd* v = m.col(col).data();
    if (x == 0) {
      for (std::uint64_t b = 0; b < dim; ++b) v[b] *= parity(b & z) ? -c : c;
      continue;
    }
    const std::uint64_t low = x & (~x + 1);
    for (std::uint64_t b = 0; b < dim; ++b) {
      if (b & low) continue;
      const std::uint64_t bp = b ^ x;
      const cd vb = v[b];
      const cd vbp = v[bp];
      v[bp] = (parity(b & z) ? -c : c) * vb;
      v[b] = (parity(bp & z) ? -c : c) * vbp;
    }
  }
}

void apply_pauli_rotation(Eigen::Ref<Eigen::MatrixXcd> m, double theta, const PauliString& p) {
  if (!p.is_hermitian()) throw std::invalid_argument("rotation axis must be Hermitian");
  if (theta == 0.0) return;
  const std::uint64_t x = p.x_bits();
  const std::uint64_t z = p.z_bits();
  const double cs = std::cos(theta);
  // -i sin(theta) times the letter scalar
  const cd s = cd(0.0, -std::sin(theta)) * letter_scalar(p);
  const auto dim = static_cast<std::uint64_t>(m.rows());
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    cd* v = m.col(col).data();
    if (x == 0) {
      const cd plus = cs + s;
      const cd minus = cs - s;
      for (std::uint64_t b = 0; b < dim; ++b) v[b] *= parity(b & z) ? minus : plus;
      continue;
    }
    const std::uint64_t low = x & (~x + 1);
    for (std::uint64_t b = 0; b < dim; ++b) {
      if (b & low) continue;
      const std::uint64_t bp = b ^ x;
      const cd vb = v[b];
      const cd vbp = v[bp];
      v[b] = cs * vb + (parity(bp & z) ? -s : s) * vbp;
      v[bp] = cs * vbp + (parity(b & z) ? -s : s) * vb;
    }
  }
}

void apply_pauli(StateVector& state, const PauliString& p) { apply_pauli(state.amplitudes(), p); }

void apply_pauli_rotation(StateVector& state, double theta, const PauliString& p) {
  apply_pauli_rotation(state.amplitudes(), theta, p);
}

cd matrix_element(const Eigen::VectorXcd& a, const PauliString& p, const Eigen::VectorXcd& b) {
  const std::uint64_t x = p.x_bits();
  const std::uint64_t z = p.z_bits();
  const cd c = letter_scalar(p);
  const auto dim = static_cast<std::uint64_t>(b.size());
  cd acc = 0.0;
  for (std::uint64_t k = 0; k < dim; ++k) {
    const cd term = std::conj(a(static_cast<Eigen::Index>(k ^ x))) * b(static_cast<Eigen::Index>(k));
    acc += parity(k & z) ? -term : term;
  }
  return c * acc;
}

cd expectation(const Eigen::VectorXcd& psi, const PauliString& p) {
  return matrix_element(psi, p, psi);
}

cd expectation(const StateVector& state, const PauliString& p) {
  return expectation(state.amplitudes(), p);
}

}  // namespace fdtc
