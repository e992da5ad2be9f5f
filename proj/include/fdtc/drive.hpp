#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fdtc/code.hpp"

namespace fdtc {

/// Field angles per qubit and one coupling per generator (same order as
/// StabilizerCode::generators()).
struct DriveParameters {
  std::vector<double> h_x;
  std::vector<double> h_z;
  std::vector<double> couplings;

  static DriveParameters zeros(const StabilizerCode& code);
  /// Throws std::invalid_argument when array lengths do not match the code.
  void check_shape(const StabilizerCode& code) const;
};

/// One disorder realization of the drive.
struct ModelInstance {
  std::shared_ptr<const StabilizerCode> code;
  DriveParameters params;
  std::uint64_t seed = 0;

  const LatticeSpec& lattice() const { return code->lattice(); }
  std::size_t qubit_count() const { return code->qubit_count(); }
};

}  // namespace fdtc
