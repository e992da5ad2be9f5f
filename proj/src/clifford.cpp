#include "fdtc/clifford.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fdtc/dense.hpp"

namespace fdtc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTol = 1e-12;

struct PairImage {
  PauliLetter a;
  PauliLetter b;
  int phase;
};

using PairTable = std::array<std::array<PairImage, 4>, 4>;

Eigen::Matrix4cd iswap_matrix() {
  const PauliString xx = PauliString::from_masks(0b11, 0);
  const PauliString yy = PauliString::from_masks(0b11, 0b11);
  return rotation_matrix(kPi / 4, xx, 2) * rotation_matrix(kPi / 4, yy, 2);
}

PairTable compute_table(bool dagger) {
  Eigen::Matrix4cd g = iswap_matrix();
  if (dagger) g = g.adjoint().eval();
  PairTable table{};
  constexpr std::array<PauliLetter, 4> kLetters{PauliLetter::I, PauliLetter::X, PauliLetter::Y,
                                                PauliLetter::Z};
  for (auto la : kLetters) {
    for (auto lb : kLetters) {
      PauliString p;
      p.set_letter(0, la);
      p.set_letter(1, lb);
      const Eigen::Matrix4cd image = g.adjoint() * pauli_matrix(p, 2) * g;
      bool found = false;
      for (auto ma : kLetters) {
        for (auto mb : kLetters) {
          PauliString q;
          q.set_letter(0, ma);
          q.set_letter(1, mb);
          const std::complex<double> c = (pauli_matrix(q, 2).adjoint() * image).trace() / 4.0;
          if (std::abs(std::abs(c) - 1.0) > 1e-9) continue;
          int k = 0;
          if (std::abs(c - std::complex<double>(0, 1)) < 1e-9) k = 1;
          else if (std::abs(c + 1.0) < 1e-9) k = 2;
          else if (std::abs(c - std::complex<double>(0, -1)) < 1e-9) k = 3;
          table[static_cast<std::size_t>(la)][static_cast<std::size_t>(lb)] = {ma, mb, k};
          found = true;
        }
      }
      if (!found) throw std::logic_error("iSWAP conjugation is not a Pauli map");
    }
  }
  return table;
}

const PairTable& table_for(bool dagger) {
  static const PairTable forward = compute_table(false);
  static const PairTable backward = compute_table(true);
  return dagger ? backward : forward;
}

PauliString conjugate_rotation_gate(const PauliRotation& g, const PauliString& p) {
  if (!is_clifford_angle(g.theta)) {
    std::ostringstream msg;
    msg << "rotation angle " << g.theta << " is not Clifford (need +-pi/4)";
    throw std::invalid_argument(msg.str());
  }
  if (g.axis.commutes_with(p)) return p;
  // exp(+i t A) P exp(-i t A) = i sin(2t) A P for anticommuting A, P at t = +-pi/4.
  const int k = g.theta > 0 ? 1 : 3;
  const PauliString ap = g.axis * p;
  return ap.with_phase(ap.phase_exponent() + k);
}

PauliString conjugate_iswap(const ISwapGate& g, const PauliString& p) {
  if (g.a == g.b) throw std::invalid_argument("iSWAP needs two distinct qubits");
  const PauliLetter la = p.letter(g.a);
  const PauliLetter lb = p.letter(g.b);
  PauliString rest = p;
  rest.set_letter(g.a, PauliLetter::I);
  rest.set_letter(g.b, PauliLetter::I);
  const PauliString image = iswap_conjugate_pair(la, lb, g.a, g.b, g.dagger);
  PauliString out = rest.unsigned_part() * image;
  return out.with_phase(out.phase_exponent() + p.phase_exponent());
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<Site> parse_sites(std::string_view text) {
  std::vector<Site> sites;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ',' || std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(') throw std::invalid_argument("expected '(' in site list");
    const auto close = text.find(')', pos);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated site");
    const std::string inner(text.substr(pos + 1, close - pos - 1));
    const auto comma = inner.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("malformed site '" + inner + "'");
    try {
      sites.push_back({std::stoi(inner.substr(0, comma)), std::stoi(inner.substr(comma + 1))});
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed site '" + inner + "'");
    }
    pos = close + 1;
  }
  return sites;
}

std::string site_text(const LatticeSpec& lat, std::size_t q) {
  const Site s = lat.site(q);
  return "(" + std::to_string(s.i) + "," + std::to_string(s.j) + ")";
}

std::string angle_text(double theta) {
  for (int num : {1, -1, 2, -2, 3, -3, 4, -4}) {
    for (int den : {4, 8, 2, 1}) {
      if (std::abs(theta - num * kPi / den) < 1e-14) {
        std::string out = num > 0 ? "+" : "-";
        if (std::abs(num) != 1) out += std::to_string(std::abs(num));
        out += "pi";
        if (den != 1) out += "/" + std::to_string(den);
        return out;
      }
    }
  }
  std::ostringstream out;
  out.precision(17);
  out << theta;
  return out.str();
}

}  // namespace

bool PauliCombination::is_single(double tol) const {
  return std::abs(c1) < tol || std::abs(c2) < tol;
}

PauliString PauliCombination::collapse(double tol) const {
  if (!is_single(tol)) throw std::logic_error("combination has two nonzero terms");
  const auto& c = std::abs(c1) < tol ? c2 : c1;
  const auto& p = std::abs(c1) < tol ? p2 : p1;
  int k = 0;
  if (std::abs(c - std::complex<double>(0, 1)) < 1e-9) k = 1;
  else if (std::abs(c + 1.0) < 1e-9) k = 2;
  else if (std::abs(c - std::complex<double>(0, -1)) < 1e-9) k = 3;
  else if (std::abs(c - 1.0) > 1e-9) throw std::logic_error("coefficient is not a unit phase");
  return p.with_phase(p.phase_exponent() + k);
}

PauliCombination euler_conjugate(double theta, const PauliString& p1, const PauliString& p2) {
  if (p1.commutes_with(p2)) {
    throw std::invalid_argument("euler_conjugate needs anticommuting strings");
  }
  return PauliCombination{std::complex<double>(std::cos(2 * theta), 0.0), p2,
                          std::complex<double>(0.0, -std::sin(2 * theta)), p1 * p2};
}

bool is_clifford_angle(double theta) {
  return std::abs(std::abs(theta) - kPi / 4) < kAngleTol;
}

bool is_clifford(const CliffordGate& gate) {
  if (const auto* r = std::get_if<PauliRotation>(&gate)) return is_clifford_angle(r->theta);
  return true;
}

PauliString conjugate_by_gate(const CliffordGate& gate, const PauliString& p) {
  if (const auto* r = std::get_if<PauliRotation>(&gate)) return conjugate_rotation_gate(*r, p);
  return conjugate_iswap(std::get<ISwapGate>(gate), p);
}

PauliRotation conjugate_rotation(const CliffordSequence& seq, const PauliRotation& rot) {
  PauliRotation out = rot;
  for (const auto& g : seq.gates) out.axis = conjugate_by_gate(g, out.axis);
  return out;
}

std::vector<PauliString> axis_trace(const CliffordSequence& seq, const PauliString& axis) {
  std::vector<PauliString> trace;
  trace.reserve(seq.gates.size());
  PauliString cur = axis;
  for (const auto& g : seq.gates) {
    cur = conjugate_by_gate(g, cur);
    trace.push_back(cur);
  }
  return trace;
}

PauliString iswap_conjugate_pair(PauliLetter la, PauliLetter lb, std::size_t a, std::size_t b,
                                 bool dagger) {
  const PairImage img = table_for(dagger)[static_cast<std::size_t>(la)][static_cast<std::size_t>(lb)];
  PauliString out;
  out.set_letter(a, img.a);
  out.set_letter(b, img.b);
  return out.with_phase(img.phase);
}

CliffordSequence inverse(const CliffordSequence& seq) {
  CliffordSequence inv;
  for (auto it = seq.gates.rbegin(); it != seq.gates.rend(); ++it) {
    if (const auto* r = std::get_if<PauliRotation>(&*it)) {
      inv.gates.emplace_back(PauliRotation{-r->theta, r->axis});
    } else {
      ISwapGate g = std::get<ISwapGate>(*it);
      g.dagger = !g.dagger;
      inv.gates.emplace_back(g);
    }
  }
  return inv;
}

std::string format_gate(const CliffordGate& gate, const LatticeSpec& lattice) {
  std::string out;
  if (const auto* r = std::get_if<PauliRotation>(&gate)) {
    std::string letters;
    std::string sites;
    for (std::size_t q = 0; q < lattice.qubit_count(); ++q) {
      const auto l = r->axis.letter(q);
      if (l == PauliLetter::I) continue;
      letters.push_back(to_char(l));
      if (!sites.empty()) sites.push_back(',');
      sites += site_text(lattice, q);
    }
    const double theta = r->axis.phase_exponent() == 2 ? -r->theta : r->theta;
    if (!r->axis.is_hermitian()) throw std::invalid_argument("rotation axis must be Hermitian");
    out = "R" + letters + "(" + angle_text(theta) + ")@" + sites;
  } else {
    const auto& g = std::get<ISwapGate>(gate);
    out = std::string(g.dagger ? "ISWAPDG" : "ISWAP") + "@" + site_text(lattice, g.a) + "," +
          site_text(lattice, g.b);
  }
  return out;
}

CliffordGate parse_gate(std::string_view line, const LatticeSpec& lattice) {
  const std::string text = trim(line);
  const auto at = text.find('@');
  if (at == std::string::npos) throw std::invalid_argument("gate '" + text + "' lacks '@'");
  const std::string head = text.substr(0, at);
  const auto sites = parse_sites(std::string_view(text).substr(at + 1));
  for (const auto& s : sites) {
    if (!lattice.contains(s.i, s.j)) throw std::invalid_argument("site outside lattice in '" + text + "'");
  }
  if (head == "ISWAP" || head == "ISWAPDG") {
    if (sites.size() != 2) throw std::invalid_argument("iSWAP needs two sites: '" + text + "'");
    const auto a = lattice.index(sites[0]);
    const auto b = lattice.index(sites[1]);
    if (a == b) throw std::invalid_argument("iSWAP sites coincide: '" + text + "'");
    return ISwapGate{a, b, head == "ISWAPDG"};
  }
  if (head.size() < 4 || head[0] != 'R') throw std::invalid_argument("unknown gate '" + text + "'");
  const auto open = head.find('(');
  if (open == std::string::npos || head.back() != ')') {
    throw std::invalid_argument("rotation needs an angle: '" + text + "'");
  }
  const std::string letters = head.substr(1, open - 1);
  const double theta = parse_angle(std::string_view(head).substr(open + 1, head.size() - open - 2));
  if (letters.size() != sites.size() || letters.empty()) {
    throw std::invalid_argument("letter/site count mismatch in '" + text + "'");
  }
  PauliString axis;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    const auto q = lattice.index(sites[k]);
    if (axis.letter(q) != PauliLetter::I) throw std::invalid_argument("repeated site in '" + text + "'");
    axis.set_letter(q, letter_from_char(letters[k]));
  }
  return PauliRotation{theta, axis};
}

double parse_angle(std::string_view raw) {
  std::string s = trim(raw);
  if (s.empty()) throw std::invalid_argument("empty angle");
  double sign = 1.0;
  if (s[0] == '+' || s[0] == '-') {
    if (s[0] == '-') sign = -1.0;
    s.erase(0, 1);
  }
  double den = 1.0;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    try {
      std::size_t used = 0;
      den = std::stod(s.substr(slash + 1), &used);
      if (used != s.size() - slash - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed angle '" + std::string(raw) + "'");
    }
    if (den == 0.0) throw std::invalid_argument("zero denominator in angle");
    s.erase(slash);
  }
  double value = 1.0;
  bool pi = false;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    pi = true;
    s.erase(s.size() - 2);
    if (!s.empty() && s.back() == '*') s.pop_back();
  }
  if (!s.empty()) {
    try {
      std::size_t used = 0;
      value = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed angle '" + std::string(raw) + "'");
    }
  } else if (!pi) {
    throw std::invalid_argument("malformed angle '" + std::string(raw) + "'");
  }
  return sign * value * (pi ? kPi : 1.0) / den;
}

}  // namespace fdtc
