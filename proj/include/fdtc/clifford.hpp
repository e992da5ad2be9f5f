#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fdtc/lattice.hpp"
#include "fdtc/pauli.hpp"

namespace fdtc {

/// exp(-i theta P).
struct PauliRotation {
  double theta = 0.0;
  PauliString axis;
};

/// exp(-i pi/4 (X_a X_b + Y_a Y_b)), or its inverse when `dagger` is set.
struct ISwapGate {
  std::size_t a = 0;
  std::size_t b = 0;
  bool dagger = false;
};

using CliffordGate = std::variant<PauliRotation, ISwapGate>;

/// Gates listed in application order; a Pauli P is carried to G^dagger P G
/// by each gate G in turn.
struct CliffordSequence {
  std::vector<CliffordGate> gates;
};

/// c1 * p1 + c2 * p2.
struct PauliCombination {
  std::complex<double> c1;
  PauliString p1;
  std::complex<double> c2;
  PauliString p2;

  /// Single-string form when one coefficient vanishes (|c| < tol).
  bool is_single(double tol = 1e-12) const;
  /// The surviving string with its unit coefficient folded into the phase.
  PauliString collapse(double tol = 1e-12) const;
};

/// exp(-i theta P1) P2 exp(+i theta P1) = cos(2 theta) P2 - i sin(2 theta) P1 P2.
/// Throws std::invalid_argument if P1 and P2 commute.
PauliCombination euler_conjugate(double theta, const PauliString& p1, const PauliString& p2);

bool is_clifford_angle(double theta);
bool is_clifford(const CliffordGate& gate);

/// G^dagger P G for a single Clifford gate. Throws std::invalid_argument on a
/// non-Clifford rotation.
PauliString conjugate_by_gate(const CliffordGate& gate, const PauliString& p);
/// Axis carried through every gate of the sequence; angle unchanged.
PauliRotation conjugate_rotation(const CliffordSequence& seq, const PauliRotation& rot);
/// Axis after each gate, one entry per gate.
std::vector<PauliString> axis_trace(const CliffordSequence& seq, const PauliString& axis);

/// Image of the two-qubit Pauli (la on a, lb on b) under G^dagger (.) G for
/// G = iSWAP (or iSWAP^dagger), read from a table computed from the 4x4 matrix.
PauliString iswap_conjugate_pair(PauliLetter la, PauliLetter lb, std::size_t a, std::size_t b,
                                 bool dagger = false);

CliffordSequence inverse(const CliffordSequence& seq);

// Text form, one gate per line:
//   RX(+pi/4)@(i,j)   RXZ(-pi/4)@(i,j),(i',j')   ISWAP@(i,j),(i',j')   ISWAPDG@(i,j),(i',j')
std::string format_gate(const CliffordGate& gate, const LatticeSpec& lattice);
CliffordGate parse_gate(std::string_view line, const LatticeSpec& lattice);
/// Parses an angle such as "+pi/4", "-0.25pi", "pi" or "0.7".
double parse_angle(std::string_view text);

}  // namespace fdtc
