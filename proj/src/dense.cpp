#include "fdtc/dense.hpp"

#include <bit>
#include <stdexcept>

namespace fdtc {

Eigen::MatrixXcd pauli_matrix(const PauliString& p, std::size_t qubits) {
  if (qubits > 14) throw std::invalid_argument("dense Pauli matrix limited to 14 qubits");
  const std::size_t dim = std::size_t{1} << qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  const std::uint64_t x = p.x_bits();
  const std::uint64_t z = p.z_bits();
  const int y_count = std::popcount(x & z);
  const std::complex<double> base = PauliString::from_masks(0, 0, p.phase_exponent() + y_count).phase();
  for (std::size_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(b & z) % 2 == 0) ? 1.0 : -1.0;
    m(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) = base * sign;
  }
  return m;
}

Eigen::MatrixXcd rotation_matrix(double theta, const PauliString& p, std::size_t qubits) {
  const auto pm = pauli_matrix(p, qubits);
  return std::cos(theta) * Eigen::MatrixXcd::Identity(pm.rows(), pm.cols()) -
         std::complex<double>(0, std::sin(theta)) * pm;
}

double max_error_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix shapes differ");
  }
  const std::complex<double> overlap = (b.adjoint() * a).trace();
  std::complex<double> phase{1.0, 0.0};
  if (std::abs(overlap) > 1e-300) phase = overlap / std::abs(overlap);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace fdtc
