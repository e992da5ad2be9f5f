#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

#include "fdtc/pauli.hpp"

namespace fdtc {

/// Raised when a unitarity or norm guard trips.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a system exceeds the dense-simulation qubit cap.
class CapacityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kDefaultMaxQubits = 14;

/// Cap on dense simulation size; FDTC_MAX_QUBITS overrides the default of 14.
std::size_t max_qubits();
void check_qubit_cap(std::size_t qubits);

/// Dense amplitudes over 2^N basis states; qubit q is bit q of the index.
class StateVector {
 public:
  /// |0...0>.
  explicit StateVector(std::size_t qubits);
  StateVector(std::size_t qubits, Eigen::VectorXcd amplitudes);

  std::size_t qubit_count() const noexcept { return qubits_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amps_.size()); }

  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  Eigen::VectorXcd& amplitudes() noexcept { return amps_; }

  double norm() const { return amps_.norm(); }
  /// Throws NumericalError when |norm - 1| exceeds tol.
  void check_norm(double tol = 1e-10) const;
  void normalize();

 private:
  std::size_t qubits_;
  Eigen::VectorXcd amps_;
};

/// In-place P v for every column of `m` (rows indexed by basis state).
void apply_pauli(Eigen::Ref<Eigen::MatrixXcd> m, const PauliString& p);
/// In-place exp(-i theta P) for every column of `m`. P must be Hermitian.
void apply_pauli_rotation(Eigen::Ref<Eigen::MatrixXcd> m, double theta, const PauliString& p);

void apply_pauli(StateVector& state, const PauliString& p);
void apply_pauli_rotation(StateVector& state, double theta, const PauliString& p);

/// <a| P |b>.
std::complex<double> matrix_element(const Eigen::VectorXcd& a, const PauliString& p,
                                    const Eigen::VectorXcd& b);
/// <psi| P |psi>.
std::complex<double> expectation(const Eigen::VectorXcd& psi, const PauliString& p);
std::complex<double> expectation(const StateVector& state, const PauliString& p);

}  // namespace fdtc
