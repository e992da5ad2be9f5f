#include "fdtc/synth.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fdtc/dense.hpp"

namespace fdtc {

namespace {

constexpr double kQuarter = std::numbers::pi / 4;

PauliString pauli_on(const LatticeSpec& lat, std::initializer_list<std::pair<Site, PauliLetter>> factors) {
  PauliString p;
  for (const auto& [s, l] : factors) p.set_letter(lat.index(s), l);
  return p;
}

PauliString uniform_on(const LatticeSpec& lat, const std::vector<Site>& sites, PauliLetter l) {
  PauliString p;
  for (const auto& s : sites) p.set_letter(lat.index(s), l);
  return p;
}

void add_rotation(SynthesisChain& c, const PauliString& axis) {
  c.chain.gates.emplace_back(PauliRotation{kQuarter, axis});
}

void add_layer(SynthesisChain& c, const std::vector<Site>& sites, PauliLetter l) {
  for (const auto& s : sites) add_rotation(c, PauliString::single(c.lattice.index(s), l));
}

void checkpoint(SynthesisChain& c, std::vector<PauliString> expected) {
  c.checkpoints.push_back({c.chain.gates.size() - 1, std::move(expected)});
}

SynthesisChain native_chain(StabilizerType type, Site corner, const LatticeSpec& lat) {
  const int i = corner.i;
  const int j = corner.j;
  if (!lat.contains(i, j) || !lat.contains(i + 1, j + 1)) {
    throw std::invalid_argument("plaquette corner must satisfy i < Lx and j < Ly");
  }
  const Site a{i, j};
  const Site b{i + 1, j};
  const Site ap{i, j + 1};
  const Site bp{i + 1, j + 1};
  const std::size_t qa = lat.index(a);
  const std::size_t qb = lat.index(b);
  const std::size_t qap = lat.index(ap);
  const std::size_t qbp = lat.index(bp);
  using L = PauliLetter;

  SynthesisChain c;
  c.backend = Backend::NativeTwoQubit;
  c.lattice = lat;
  c.seed_terms = {PauliString::single(qa, L::X)};

  c.chain.gates.emplace_back(ISwapGate{qa, qb});
  checkpoint(c, {pauli_on(lat, {{a, L::Z}, {b, L::Y}})});
  add_rotation(c, PauliString::single(qa, L::X));
  checkpoint(c, {pauli_on(lat, {{a, L::Y}, {b, L::Y}})});
  c.chain.gates.emplace_back(ISwapGate{qa, qap});
  c.chain.gates.emplace_back(ISwapGate{qb, qbp});
  checkpoint(c, {pauli_on(lat, {{a, L::Z}, {ap, L::X}, {b, L::Z}, {bp, L::X}})});
  add_rotation(c, PauliString::single(qap, L::Y));
  add_rotation(c, PauliString::single(qbp, L::Y));
  const PauliString sz = uniform_on(lat, {a, b, ap, bp}, L::Z);
  checkpoint(c, {sz});
  if (type == StabilizerType::SZ) {
    c.targets = {sz};
    return c;
  }
  add_layer(c, {a, b, ap, bp}, L::Y);
  const PauliString sx = uniform_on(lat, {a, b, ap, bp}, L::X);
  checkpoint(c, {sx});
  c.targets = {sx};
  return c;
}

SynthesisChain trapped_ion_chain(StabilizerType type, Site corner, const LatticeSpec& lat) {
  const int i = corner.i;
  const int j = corner.j;
  if (!lat.contains(i, j) || !lat.contains(i, j + 1)) {
    throw std::invalid_argument("trapped-ion corner must satisfy j < Ly");
  }
  using L = PauliLetter;
  std::vector<int> partners;
  for (int ip : {i + 1, i - 1}) {
    if (lat.contains(ip, j)) partners.push_back(ip);
  }
  if (partners.empty()) throw std::invalid_argument("corner has no Ising partner inside the lattice");

  SynthesisChain c;
  c.backend = Backend::TrappedIon;
  c.lattice = lat;
  std::vector<PauliString> yy;
  std::vector<PauliString> xxxx;
  std::vector<PauliString> zzzz;
  std::vector<Site> all_sites;
  for (int ip : partners) {
    c.seed_terms.push_back(uniform_on(lat, {{i, j}, {ip, j}}, L::Z));
    yy.push_back(uniform_on(lat, {{i, j}, {ip, j}}, L::Y));
    const std::vector<Site> plaquette{{i, j}, {i, j + 1}, {ip, j}, {ip, j + 1}};
    xxxx.push_back(uniform_on(lat, plaquette, L::X));
    zzzz.push_back(uniform_on(lat, plaquette, L::Z));
    for (const auto& s : plaquette) {
      if (std::find(all_sites.begin(), all_sites.end(), s) == all_sites.end()) all_sites.push_back(s);
    }
  }

  std::vector<int> rows;
  for (int ip : {i - 1, i, i + 1}) {
    if (lat.contains(ip, j)) rows.push_back(ip);
  }
  for (int ip : rows) add_rotation(c, PauliString::single(lat.index(ip, j), L::X));
  checkpoint(c, yy);
  for (int ip : rows) {
    add_rotation(c, pauli_on(lat, {{{ip, j + 1}, L::X}, {{ip, j}, L::Z}}));
    if (lat.contains(ip, j + 2)) add_rotation(c, pauli_on(lat, {{{ip, j + 1}, L::X}, {{ip, j + 2}, L::Z}}));
  }
  checkpoint(c, xxxx);
  if (type == StabilizerType::SX) {
    c.targets = xxxx;
    return c;
  }
  add_layer(c, all_sites, L::Y);
  checkpoint(c, zzzz);
  c.targets = zzzz;
  return c;
}

int sign_against(const PauliString& got, const PauliString& want) {
  if (!got.same_letters(want)) return 0;
  const int d = (got.phase_exponent() - want.phase_exponent() + 4) % 4;
  if (d == 0) return 1;
  if (d == 2) return -1;
  return 0;
}

// Restricts a string to the patch, renumbering qubits by patch position.
PauliString localize(const PauliString& p, const std::vector<std::size_t>& patch) {
  PauliString out;
  for (std::size_t k = 0; k < patch.size(); ++k) out.set_letter(k, p.letter(patch[k]));
  if (out.weight() != p.weight()) throw std::logic_error("string reaches outside the patch");
  return out.with_phase(p.phase_exponent());
}

std::size_t local_index(std::size_t q, const std::vector<std::size_t>& patch) {
  const auto it = std::find(patch.begin(), patch.end(), q);
  if (it == patch.end()) throw std::logic_error("qubit outside the patch");
  return static_cast<std::size_t>(it - patch.begin());
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string to_string(Backend b) { return b == Backend::TrappedIon ? "trapped-ion" : "native"; }
std::string to_string(StabilizerType t) { return t == StabilizerType::SX ? "SX" : "SZ"; }

Backend backend_from_string(const std::string& text) {
  if (text == "trapped-ion" || text == "ion" || text == "trapped") return Backend::TrappedIon;
  if (text == "native" || text == "iswap" || text == "native-two-qubit") return Backend::NativeTwoQubit;
  throw std::invalid_argument("unknown backend '" + text + "' (expected trapped-ion|native)");
}

StabilizerType stabilizer_type_from_string(const std::string& text) {
  if (text == "SX" || text == "sx") return StabilizerType::SX;
  if (text == "SZ" || text == "sz") return StabilizerType::SZ;
  throw std::invalid_argument("unknown stabilizer type '" + text + "' (expected SX|SZ)");
}

SynthesisChain builtin_chain(Backend backend, StabilizerType type, Site corner, const LatticeSpec& lattice) {
  if (lattice.periodic()) throw std::invalid_argument("built-in chains use open lattices");
  return backend == Backend::NativeTwoQubit ? native_chain(type, corner, lattice)
                                            : trapped_ion_chain(type, corner, lattice);
}

SymbolicResult verify_symbolic(const SynthesisChain& chain) {
  SymbolicResult r;
  if (chain.seed_terms.size() != chain.targets.size()) {
    throw std::invalid_argument("chain needs one target per seed term");
  }
  std::vector<std::vector<PauliString>> traces;
  for (const auto& s : chain.seed_terms) traces.push_back(axis_trace(chain.chain, s));
  for (const auto& cp : chain.checkpoints) {
    if (cp.gate_index >= chain.chain.gates.size() || cp.expected.size() != traces.size()) {
      throw std::invalid_argument("malformed checkpoint");
    }
    bool ok = true;
    for (std::size_t t = 0; t < traces.size(); ++t) ok = ok && traces[t][cp.gate_index] == cp.expected[t];
    if (!ok) {
      r.divergence = cp.gate_index;
      break;
    }
  }
  bool all_plus = true;
  for (std::size_t t = 0; t < traces.size(); ++t) {
    const PauliString fin = traces[t].empty() ? chain.seed_terms[t] : traces[t].back();
    r.final_axes.push_back(fin);
    const int s = sign_against(fin, chain.targets[t]);
    r.signs.push_back(s);
    all_plus = all_plus && s == 1;
  }
  if (!all_plus && !r.divergence && !chain.chain.gates.empty()) r.divergence = chain.chain.gates.size() - 1;
  r.passed = all_plus && !r.divergence;
  return r;
}

std::vector<std::size_t> active_patch(const SynthesisChain& chain) {
  std::uint64_t mask = 0;
  for (const auto& p : chain.seed_terms) mask |= p.support();
  for (const auto& p : chain.targets) mask |= p.support();
  for (const auto& g : chain.chain.gates) {
    if (const auto* r = std::get_if<PauliRotation>(&g)) {
      mask |= r->axis.support();
    } else {
      const auto& s = std::get<ISwapGate>(g);
      mask |= (std::uint64_t{1} << s.a) | (std::uint64_t{1} << s.b);
    }
  }
  std::vector<std::size_t> patch;
  for (std::size_t q = 0; q < 64; ++q) {
    if ((mask >> q) & 1U) patch.push_back(q);
  }
  return patch;
}

double verify_numeric(const SynthesisChain& chain, double theta, std::size_t max_patch) {
  const auto patch = active_patch(chain);
  if (patch.size() > max_patch) {
    throw std::invalid_argument("active patch has " + std::to_string(patch.size()) + " qubits (limit " +
                                std::to_string(max_patch) + ")");
  }
  const std::size_t n = patch.size();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : chain.chain.gates) {
    if (const auto* r = std::get_if<PauliRotation>(&g)) {
      w = w * rotation_matrix(r->theta, localize(r->axis, patch), n);
    } else {
      const auto& s = std::get<ISwapGate>(g);
      const std::size_t a = local_index(s.a, patch);
      const std::size_t b = local_index(s.b, patch);
      PauliString xx;
      xx.set_letter(a, PauliLetter::X);
      xx.set_letter(b, PauliLetter::X);
      PauliString yy;
      yy.set_letter(a, PauliLetter::Y);
      yy.set_letter(b, PauliLetter::Y);
      Eigen::MatrixXcd m = rotation_matrix(kQuarter, xx, n) * rotation_matrix(kQuarter, yy, n);
      if (s.dagger) m = m.adjoint().eval();
      w = w * m;
    }
  }
  Eigen::MatrixXcd seed = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& p : chain.seed_terms) seed = seed * rotation_matrix(theta, localize(p, patch), n);
  Eigen::MatrixXcd target = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& p : chain.targets) target = target * rotation_matrix(theta, localize(p, patch), n);
  const Eigen::MatrixXcd lhs = w.adjoint() * seed * w;
  return max_error_up_to_phase(lhs, target);
}

SynthesisChain parse_chain(std::string_view text, const LatticeSpec& lattice, Backend backend) {
  SynthesisChain c;
  c.backend = backend;
  c.lattice = lattice;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    try {
      if (line.rfind("SEED", 0) == 0) {
        c.seed_terms.push_back(parse_pauli(std::string_view(line).substr(4), lattice));
      } else if (line.rfind("TARGET", 0) == 0) {
        c.targets.push_back(parse_pauli(std::string_view(line).substr(6), lattice));
      } else {
        c.chain.gates.push_back(parse_gate(line, lattice));
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (c.seed_terms.empty()) throw std::invalid_argument("circuit has no SEED line");
  if (c.seed_terms.size() != c.targets.size()) {
    throw std::invalid_argument("circuit needs one TARGET per SEED");
  }
  return c;
}

std::string format_chain(const SynthesisChain& chain) {
  std::ostringstream out;
  for (const auto& s : chain.seed_terms) out << "SEED " << format_pauli(s, chain.lattice) << "\n";
  for (const auto& t : chain.targets) out << "TARGET " << format_pauli(t, chain.lattice) << "\n";
  for (const auto& g : chain.chain.gates) out << format_gate(g, chain.lattice) << "\n";
  return out.str();
}

}  // namespace fdtc
