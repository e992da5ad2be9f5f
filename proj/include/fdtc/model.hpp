#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "fdtc/drive.hpp"
#include "fdtc/floquet.hpp"

namespace fdtc {

enum class Regime { DTC2T, CNOT4T };

std::string to_string(Regime r);
Regime regime_from_string(const std::string& text);

/// Ideal drive: h_x = pi/2 on row i=1, h_z = pi/2 on column j=1 (DTC2T) or
/// pi/4 everywhere (CNOT4T), zero elsewhere; couplings zero.
/// CNOT4T on an open code throws std::invalid_argument.
DriveParameters ideal_parameters(const StabilizerCode& code, Regime regime);

struct FamilyDisorder {
  double mean = 0.0;
  double halfwidth = 0.0;
};

/// Uniform windows (mean - halfwidth, mean + halfwidth) per parameter family.
/// Row-1 x fields sit on sites (1,j), column-1 z fields on sites (i,1).
/// Periodic codes draw every coupling from j_bulk.
struct DisorderSpec {
  FamilyDisorder h_x_row1;
  FamilyDisorder h_x_bulk;
  FamilyDisorder h_z_col1;
  FamilyDisorder h_z_bulk;
  FamilyDisorder j_bulk;
  FamilyDisorder j_boundary_x;
  FamilyDisorder j_boundary_z;
  /// Overrides the z window at site (1,1) when present.
  std::optional<FamilyDisorder> h_z_corner;

  void validate() const;
};

/// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based stream: draw p is splitmix64(seed + (p + 1) * golden).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Uniform integer in [0, n), rejection sampled.
  std::uint64_t bounded(std::uint64_t n);
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Sub-seed for realization r of an ensemble.
std::uint64_t realization_seed(std::uint64_t seed, std::uint64_t r);

/// Draws h_x (qubit order), then h_z, then couplings (generator order).
ModelInstance sample_instance(std::shared_ptr<const StabilizerCode> code, const DisorderSpec& spec,
                              std::uint64_t seed);

/// U_T = Ũ_T U_ideal with Ũ_T = exp(-i sum dx X) exp(-i sum dz Z).
struct IdealSplit {
  Regime regime;
  DriveParameters ideal;
  std::vector<double> delta_x;
  std::vector<double> delta_z;  // sign already flipped where the ideal x angle is an odd multiple of pi/2

  /// Ũ_T applied to every column of `m`.
  void apply_perturbation(Eigen::Ref<Eigen::MatrixXcd> m) const;
  /// max |sin(delta)| over all deltas.
  double imperfection() const;
};

/// Each field is split into the nearest ideal value (ideal + k*pi) and a
/// remainder; couplings stay in the ideal part.
IdealSplit split_ideal(const ModelInstance& inst, Regime regime);

/// ModelInstance with the ideal part of the split.
ModelInstance ideal_instance(const ModelInstance& inst, const IdealSplit& split);

enum class PhaseTarget { ZBar, XBar, ZBar2 };

std::string to_string(PhaseTarget t);

struct RelativePhase {
  bool defined = false;
  std::complex<double> xi;   // i log(A_1 / A_0); imaginary part carries amplitude imbalance
  double value = 0.0;        // Re xi folded into (-pi, pi]
  double reference = 0.0;    // pi, or pi/2 for ZBar2
  double deviation = 0.0;    // |wrap(Re xi - reference) + i Im xi|
  double imperfection = 0.0; // max |sin(delta)|
};

/// Relative phase of the perturbation between ideal-point reference
/// eigenstates. ZBar2 uses the CNOT4T regime and needs a periodic code;
/// the others use DTC2T.
RelativePhase relative_phase(const ModelInstance& inst, PhaseTarget target, double floor = 1e-12);

/// Quasienergy of (|0̄> + i|1̄>)/sqrt(2) at a DTC2T ideal point with couplings
/// J_k: sum J_k + (Lx + Ly + 1) pi/2, folded.
double ideal_quasienergy_plus(const ModelInstance& inst);

}  // namespace fdtc
