#pragma once

#include <Eigen/Dense>

#include "fdtc/pauli.hpp"

namespace fdtc {

/// Dense 2^n x 2^n matrix of a Pauli string; qubit q is bit q of the basis index.
Eigen::MatrixXcd pauli_matrix(const PauliString& p, std::size_t qubits);

/// cos(theta) I - i sin(theta) P.
Eigen::MatrixXcd rotation_matrix(double theta, const PauliString& p, std::size_t qubits);

/// max |A_ij - B_ij| after removing the global phase that best aligns B to A.
double max_error_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace fdtc
