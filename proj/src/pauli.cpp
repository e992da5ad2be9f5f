#include "fdtc/pauli.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace fdtc {

namespace {

int mod4(int k) { return ((k % 4) + 4) % 4; }

int popcount(std::uint64_t v) { return std::popcount(v); }

void check_qubit(std::size_t q) {
  if (q >= 64) throw std::out_of_range("Pauli strings support at most 64 qubits");
}

// Row reduction over 128-bit symplectic rows; returns the reduced pivot rows.
struct Row {
  std::uint64_t x;
  std::uint64_t z;
};

bool bit(const Row& r, int k) {
  return k < 64 ? ((r.x >> k) & 1U) : ((r.z >> (k - 64)) & 1U);
}

void xor_into(Row& dst, const Row& src) {
  dst.x ^= src.x;
  dst.z ^= src.z;
}

int leading_bit(const Row& r) {
  if (r.x != 0) return std::countr_zero(r.x);
  if (r.z != 0) return 64 + std::countr_zero(r.z);
  return -1;
}

// Echelon basis where every pivot column appears in exactly one row.
class Gf2Basis {
 public:
  // Returns true when `r` was independent and has been added.
  bool insert(Row r) {
    reduce(r);
    const int lead = leading_bit(r);
    if (lead < 0) return false;
    for (auto& b : rows_) {
      if (bit(b, lead)) xor_into(b, r);
    }
    rows_.push_back(r);
    pivots_.push_back(lead);
    return true;
  }

  void reduce(Row& r) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (bit(r, pivots_[k])) xor_into(r, rows_[k]);
    }
  }

  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<Row> rows_;
  std::vector<int> pivots_;
};

}  // namespace

char to_char(PauliLetter p) {
  static constexpr std::array<char, 4> kChars{'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<std::size_t>(p)];
}

PauliLetter letter_from_char(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'I': return PauliLetter::I;
    case 'X': return PauliLetter::X;
    case 'Y': return PauliLetter::Y;
    case 'Z': return PauliLetter::Z;
    default: throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
  }
}

PauliString PauliString::single(std::size_t qubit, PauliLetter letter) {
  PauliString p;
  p.set_letter(qubit, letter);
  return p;
}

PauliString PauliString::from_masks(std::uint64_t x_bits, std::uint64_t z_bits, int phase_exponent) {
  PauliString p;
  p.x_ = x_bits;
  p.z_ = z_bits;
  p.phase_ = mod4(phase_exponent);
  return p;
}

PauliString PauliString::uniform(std::span<const std::size_t> qubits, PauliLetter letter) {
  PauliString p;
  for (auto q : qubits) p.set_letter(q, letter);
  return p;
}

PauliLetter PauliString::letter(std::size_t qubit) const noexcept {
  if (qubit >= 64) return PauliLetter::I;
  const bool xb = (x_ >> qubit) & 1U;
  const bool zb = (z_ >> qubit) & 1U;
  if (xb && zb) return PauliLetter::Y;
  if (xb) return PauliLetter::X;
  if (zb) return PauliLetter::Z;
  return PauliLetter::I;
}

void PauliString::set_letter(std::size_t qubit, PauliLetter letter) {
  check_qubit(qubit);
  const std::uint64_t m = std::uint64_t{1} << qubit;
  x_ &= ~m;
  z_ &= ~m;
  if (letter == PauliLetter::X || letter == PauliLetter::Y) x_ |= m;
  if (letter == PauliLetter::Z || letter == PauliLetter::Y) z_ |= m;
}

std::size_t PauliString::weight() const noexcept {
  return static_cast<std::size_t>(popcount(support()));
}

std::complex<double> PauliString::phase() const noexcept {
  static constexpr std::array<std::complex<double>, 4> kPhases{
      std::complex<double>{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhases[static_cast<std::size_t>(phase_)];
}

PauliString PauliString::with_phase(int phase_exponent) const {
  PauliString p = *this;
  p.phase_ = mod4(phase_exponent);
  return p;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  // Letter form i^k * prod(i^{x z} X^x Z^z); moving Z^{z1} past X^{x2}
  // contributes (-1)^{z1 . x2}.
  const std::uint64_t x3 = x_ ^ rhs.x_;
  const std::uint64_t z3 = z_ ^ rhs.z_;
  const int k = phase_ + rhs.phase_ + popcount(x_ & z_) + popcount(rhs.x_ & rhs.z_) +
                2 * popcount(z_ & rhs.x_) - popcount(x3 & z3);
  x_ = x3;
  z_ = z3;
  phase_ = mod4(k);
  return *this;
}

bool PauliString::commutes_with(const PauliString& other) const noexcept {
  return popcount((x_ & other.z_) ^ (z_ & other.x_)) % 2 == 0;
}

std::string PauliString::to_dense_string(std::size_t qubits) const {
  static constexpr std::array<const char*, 4> kPrefix{"+", "+i", "-", "-i"};
  std::string out = kPrefix[static_cast<std::size_t>(phase_)];
  for (std::size_t q = 0; q < qubits; ++q) out.push_back(to_char(letter(q)));
  return out;
}

PauliString multiply(const PauliString& p, const PauliString& q) { return p * q; }

bool commutes(const PauliString& p, const PauliString& q) { return p.commutes_with(q); }

SymplecticVector to_symplectic(const PauliString& p, std::size_t qubits) {
  SymplecticVector v;
  v.x.resize(qubits);
  v.z.resize(qubits);
  for (std::size_t q = 0; q < qubits; ++q) {
    v.x[q] = static_cast<std::uint8_t>((p.x_bits() >> q) & 1U);
    v.z[q] = static_cast<std::uint8_t>((p.z_bits() >> q) & 1U);
  }
  if ((p.support() >> std::min<std::size_t>(qubits, 63)) != 0 && qubits < 64) {
    throw std::invalid_argument("Pauli string has support beyond the requested qubit count");
  }
  v.phase_exponent = p.phase_exponent();
  return v;
}

PauliString from_symplectic(const SymplecticVector& v) {
  if (v.x.size() != v.z.size()) throw std::invalid_argument("mismatched symplectic halves");
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (std::size_t q = 0; q < v.x.size(); ++q) {
    check_qubit(q);
    if (v.x[q]) x |= std::uint64_t{1} << q;
    if (v.z[q]) z |= std::uint64_t{1} << q;
  }
  return PauliString::from_masks(x, z, v.phase_exponent);
}

int symplectic_form(const SymplecticVector& a, const SymplecticVector& b) {
  int acc = 0;
  for (std::size_t q = 0; q < a.x.size() && q < b.x.size(); ++q) {
    acc ^= (a.x[q] & b.z[q]) ^ (a.z[q] & b.x[q]);
  }
  return acc;
}

std::size_t gf2_rank(std::span<const PauliString> rows) {
  Gf2Basis basis;
  for (const auto& p : rows) basis.insert(Row{p.x_bits(), p.z_bits()});
  return basis.size();
}

bool gf2_in_span(std::span<const PauliString> rows, const PauliString& target) {
  Gf2Basis basis;
  for (const auto& p : rows) basis.insert(Row{p.x_bits(), p.z_bits()});
  Row r{target.x_bits(), target.z_bits()};
  basis.reduce(r);
  return leading_bit(r) < 0;
}

std::vector<std::size_t> gf2_independent_subset(std::span<const PauliString> rows) {
  Gf2Basis basis;
  std::vector<std::size_t> picked;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (basis.insert(Row{rows[k].x_bits(), rows[k].z_bits()})) picked.push_back(k);
  }
  return picked;
}

std::string format_pauli(const PauliString& p, const LatticeSpec& lattice) {
  static constexpr std::array<const char*, 4> kPrefix{"", "+i ", "- ", "-i "};
  std::string out = kPrefix[static_cast<std::size_t>(p.phase_exponent())];
  if (p.is_identity()) return out + "I";
  bool first = true;
  for (std::size_t q = 0; q < lattice.qubit_count(); ++q) {
    const auto l = p.letter(q);
    if (l == PauliLetter::I) continue;
    const Site s = lattice.site(q);
    if (!first) out.push_back(' ');
    first = false;
    out += to_char(l);
    out += "@(" + std::to_string(s.i) + "," + std::to_string(s.j) + ")";
  }
  return out;
}

PauliString parse_pauli(std::string_view text, const LatticeSpec& lattice) {
  std::istringstream in{std::string(text)};
  std::string tok;
  PauliString out;
  int phase = 0;
  bool any = false;
  while (in >> tok) {
    if (tok == "+" ) continue;
    if (tok == "-") { phase += 2; continue; }
    if (tok == "+i" || tok == "i") { phase += 1; continue; }
    if (tok == "-i") { phase += 3; continue; }
    if (tok == "I") { any = true; continue; }
    // P@(i,j)
    if (tok.size() < 6 || tok[1] != '@' || tok[2] != '(' || tok.back() != ')') {
      throw std::invalid_argument("malformed Pauli factor '" + tok + "'");
    }
    const PauliLetter l = letter_from_char(tok[0]);
    const auto comma = tok.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("malformed site in '" + tok + "'");
    int i = 0;
    int j = 0;
    try {
      i = std::stoi(tok.substr(3, comma - 3));
      j = std::stoi(tok.substr(comma + 1, tok.size() - comma - 2));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed site in '" + tok + "'");
    }
    if (!lattice.contains(i, j)) throw std::invalid_argument("site outside lattice in '" + tok + "'");
    out *= PauliString::single(lattice.index(i, j), l);
    any = true;
  }
  if (!any) throw std::invalid_argument("empty Pauli string");
  return out.with_phase(out.phase_exponent() + phase);
}

}  // namespace fdtc
