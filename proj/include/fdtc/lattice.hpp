#pragma once

#include <cstddef>
#include <string>

namespace fdtc {

enum class Boundary { Open, Periodic };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& text);

/// Vertex coordinate on the lattice, 1-based: 1 <= i <= Lx, 1 <= j <= Ly.
struct Site {
  int i = 1;
  int j = 1;

  friend bool operator==(const Site&, const Site&) = default;
};

/// An Lx x Ly vertex lattice. Qubits live on vertices; the linear qubit
/// index of (i,j) is (i-1)*Ly + (j-1), which is also its bit position in a
/// computational-basis index.
class LatticeSpec {
 public:
  static constexpr std::size_t kMaxSites = 64;

  LatticeSpec(int lx, int ly, Boundary boundary);

  int lx() const noexcept { return lx_; }
  int ly() const noexcept { return ly_; }
  Boundary boundary() const noexcept { return boundary_; }
  bool periodic() const noexcept { return boundary_ == Boundary::Periodic; }
  std::size_t qubit_count() const noexcept { return static_cast<std::size_t>(lx_ * ly_); }

  bool contains(int i, int j) const noexcept {
    return i >= 1 && i <= lx_ && j >= 1 && j <= ly_;
  }

  /// Linear index of (i,j); periodic lattices wrap, open lattices throw when
  /// the site is outside.
  std::size_t index(int i, int j) const;
  std::size_t index(Site s) const { return index(s.i, s.j); }
  Site site(std::size_t qubit) const;

  std::string label() const;  // e.g. "3x3 open"

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

 private:
  int lx_;
  int ly_;
  Boundary boundary_;
};

}  // namespace fdtc
