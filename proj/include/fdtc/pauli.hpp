#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdtc/lattice.hpp"

namespace fdtc {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliLetter p);
PauliLetter letter_from_char(char c);

/// Signed multi-qubit Pauli operator i^k * (P_0 (x) P_1 (x) ...).
///
/// Letters are stored as symplectic bit masks (Y sets both bits) and k is
/// tracked exactly modulo 4. Up to 64 qubits.
class PauliString {
 public:
  PauliString() = default;

  static PauliString single(std::size_t qubit, PauliLetter letter);
  static PauliString from_masks(std::uint64_t x_bits, std::uint64_t z_bits, int phase_exponent = 0);
  /// Same letter on every listed qubit.
  static PauliString uniform(std::span<const std::size_t> qubits, PauliLetter letter);

  PauliLetter letter(std::size_t qubit) const noexcept;
  void set_letter(std::size_t qubit, PauliLetter letter);

  std::uint64_t x_bits() const noexcept { return x_; }
  std::uint64_t z_bits() const noexcept { return z_; }
  std::uint64_t support() const noexcept { return x_ | z_; }
  std::size_t weight() const noexcept;

  /// k in i^k, always in [0,4).
  int phase_exponent() const noexcept { return phase_; }
  std::complex<double> phase() const noexcept;
  bool is_identity() const noexcept { return support() == 0; }
  /// Hermitian iff the scalar is +-1.
  bool is_hermitian() const noexcept { return phase_ % 2 == 0; }

  PauliString with_phase(int phase_exponent) const;
  PauliString unsigned_part() const { return with_phase(0); }
  PauliString operator-() const { return with_phase(phase_ + 2); }

  PauliString& operator*=(const PauliString& rhs);
  friend PauliString operator*(PauliString lhs, const PauliString& rhs) { return lhs *= rhs; }

  bool commutes_with(const PauliString& other) const noexcept;
  bool same_letters(const PauliString& other) const noexcept {
    return x_ == other.x_ && z_ == other.z_;
  }

  /// Compact positional form, e.g. "+iXIZY" over `qubits` positions.
  std::string to_dense_string(std::size_t qubits) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

PauliString multiply(const PauliString& p, const PauliString& q);
bool commutes(const PauliString& p, const PauliString& q);

/// Explicit GF(2) encoding of a Pauli string.
struct SymplecticVector {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> z;
  int phase_exponent = 0;

  friend bool operator==(const SymplecticVector&, const SymplecticVector&) = default;
};

SymplecticVector to_symplectic(const PauliString& p, std::size_t qubits);
PauliString from_symplectic(const SymplecticVector& v);
/// Symplectic inner product parity; 0 iff the two strings commute.
int symplectic_form(const SymplecticVector& a, const SymplecticVector& b);

/// Rank over GF(2) of the symplectic vectors (phases ignored).
std::size_t gf2_rank(std::span<const PauliString> rows);
/// Whether `target` lies in the GF(2) span of `rows`.
bool gf2_in_span(std::span<const PauliString> rows, const PauliString& target);
/// Indices of a maximal independent subset, chosen greedily in order.
std::vector<std::size_t> gf2_independent_subset(std::span<const PauliString> rows);

/// Lattice text form: "X@(1,1) Z@(2,1)", with a leading "-", "+i" or "-i"
/// when the scalar is not +1. Identity prints as "I".
std::string format_pauli(const PauliString& p, const LatticeSpec& lattice);
PauliString parse_pauli(std::string_view text, const LatticeSpec& lattice);

}  // namespace fdtc
