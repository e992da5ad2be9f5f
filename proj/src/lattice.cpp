#include "fdtc/lattice.hpp"

#include <stdexcept>

namespace fdtc {

std::string to_string(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }

Boundary boundary_from_string(const std::string& text) {
  if (text == "open") return Boundary::Open;
  if (text == "periodic" || text == "toric") return Boundary::Periodic;
  throw std::invalid_argument("unknown boundary '" + text + "' (expected open|periodic)");
}

LatticeSpec::LatticeSpec(int lx, int ly, Boundary boundary)
    : lx_(lx), ly_(ly), boundary_(boundary) {
  if (lx < 2 || ly < 2) {
    throw std::invalid_argument("lattice dimensions must be at least 2");
  }
  if (boundary == Boundary::Periodic && (lx % 2 != 0 || ly % 2 != 0)) {
    throw std::invalid_argument("periodic lattices need even Lx and Ly");
  }
  if (static_cast<std::size_t>(lx) * static_cast<std::size_t>(ly) > kMaxSites) {
    throw std::invalid_argument("lattice has more than 64 sites");
  }
}

std::size_t LatticeSpec::index(int i, int j) const {
  if (periodic()) {
    i = ((i - 1) % lx_ + lx_) % lx_ + 1;
    j = ((j - 1) % ly_ + ly_) % ly_ + 1;
  } else if (!contains(i, j)) {
    throw std::out_of_range("site (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside " + label() + " lattice");
  }
  return static_cast<std::size_t>((i - 1) * ly_ + (j - 1));
}

Site LatticeSpec::site(std::size_t qubit) const {
  if (qubit >= qubit_count()) throw std::out_of_range("qubit index outside lattice");
  const int q = static_cast<int>(qubit);
  return Site{q / ly_ + 1, q % ly_ + 1};
}

std::string LatticeSpec::label() const {
  return std::to_string(lx_) + "x" + std::to_string(ly_) + " " + to_string(boundary_);
}

}  // namespace fdtc
