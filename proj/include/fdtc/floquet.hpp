#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fdtc/drive.hpp"
#include "fdtc/statevector.hpp"

namespace fdtc {

inline constexpr double kPeriod = 1.0;

/// Folds a phase into (-pi, pi].
double fold_quasienergy(double eps);

// Layer kernels act on every column of `m`; `scale` multiplies all angles.
void apply_stabilizer_layer(Eigen::Ref<Eigen::MatrixXcd> m, const ModelInstance& inst, double scale = 1.0);
void apply_z_layer(Eigen::Ref<Eigen::MatrixXcd> m, const ModelInstance& inst, double scale = 1.0);
void apply_x_layer(Eigen::Ref<Eigen::MatrixXcd> m, const ModelInstance& inst, double scale = 1.0);

/// One full period: stabilizer layer, then Z fields, then X fields.
void evolve_period(Eigen::Ref<Eigen::MatrixXcd> m, const ModelInstance& inst);
void evolve_period(StateVector& state, const ModelInstance& inst);

/// Evolution from 0 to t within a period. The stabilizer, Z and X layers
/// occupy consecutive thirds of the period; a partially elapsed layer applies
/// the matching fraction of its angles. Throws for t outside (0, 1].
void evolve_within_period(StateVector& state, const ModelInstance& inst, double t);
void evolve_within_period(Eigen::Ref<Eigen::MatrixXcd> m, const ModelInstance& inst, double t);

struct FloquetUnitary {
  Eigen::MatrixXcd matrix;
  double period = kPeriod;
};

/// ||U^dagger U - I||_max.
double unitarity_error(const Eigen::MatrixXcd& u);

/// Throws NumericalError when the result is not unitary to 1e-9.
FloquetUnitary build_floquet_unitary(const ModelInstance& inst);

struct QuasienergySpectrum {
  Eigen::VectorXd quasienergies;  // ascending, in (-pi, pi]
  Eigen::MatrixXcd vectors;       // column n is |eps_n>

  std::size_t size() const { return static_cast<std::size_t>(quasienergies.size()); }
};

/// Eigen-decomposition of a unitary. Throws NumericalError if `u` fails the
/// unitarity check or the eigenvectors come out non-orthonormal.
QuasienergySpectrum diagonalize(const Eigen::MatrixXcd& u, double degeneracy_tol = 1e-10);
QuasienergySpectrum diagonalize(const FloquetUnitary& u);

struct SectorComponent {
  std::vector<int> signs;  // one +-1 per code generator
  double weight = 0.0;     // squared norm of the projected component
};

/// Splits a state over simultaneous eigenspaces of the stabilizer generators.
/// Components with weight below `floor` are dropped.
std::vector<SectorComponent> sector_decompose(const StateVector& state, const StabilizerCode& code,
                                              double floor = 1e-14);

/// Normalized code-space state with Z̄_k = (-1)^{bit k}: stabilizer and Z̄
/// projectors applied to |0...0>, then X̄_k for each set bit.
StateVector logical_basis_state(const StabilizerCode& code, const std::vector<int>& bits);

/// prod_k (1 + s_k P_k)/2 applied to `state` (not normalized).
void project(Eigen::VectorXcd& state, const std::vector<PauliString>& ops, const std::vector<int>& signs);

}  // namespace fdtc
