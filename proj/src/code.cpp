#include "fdtc/code.hpp"

#include <sstream>
#include <stdexcept>

namespace fdtc {

namespace {

bool x_type(int i, int j) { return (i + j) % 2 == 0; }

PauliString on_sites(const LatticeSpec& lat, std::initializer_list<Site> sites, PauliLetter l) {
  PauliString p;
  for (const Site& s : sites) p.set_letter(lat.index(s), l);
  return p;
}

PauliString plaquette(const LatticeSpec& lat, int i, int j) {
  const PauliLetter l = x_type(i, j) ? PauliLetter::X : PauliLetter::Z;
  return on_sites(lat, {{i, j}, {i + 1, j}, {i, j + 1}, {i + 1, j + 1}}, l);
}

PauliString row_string(const LatticeSpec& lat, int i, PauliLetter l) {
  PauliString p;
  for (int j = 1; j <= lat.ly(); ++j) p.set_letter(lat.index(i, j), l);
  return p;
}

PauliString column_string(const LatticeSpec& lat, int j, PauliLetter l) {
  PauliString p;
  for (int i = 1; i <= lat.lx(); ++i) p.set_letter(lat.index(i, j), l);
  return p;
}

void ensure_valid(const StabilizerCode& code) {
  const auto report = validate_code(code);
  if (!report.passed) {
    throw std::logic_error("generated code failed validation: " + report.summary());
  }
}

}  // namespace

std::string to_string(GeneratorFamily f) {
  switch (f) {
    case GeneratorFamily::XBulk: return "Xbulk";
    case GeneratorFamily::ZBulk: return "Zbulk";
    case GeneratorFamily::ZBoundary: return "Zboundary";
    case GeneratorFamily::XBoundary: return "Xboundary";
  }
  return "?";
}

StabilizerCode::StabilizerCode(LatticeSpec lattice, std::vector<Generator> generators,
                               std::vector<LogicalPair> logicals)
    : lattice_(lattice), generators_(std::move(generators)), logicals_(std::move(logicals)) {}

std::vector<PauliString> StabilizerCode::generator_ops() const {
  std::vector<PauliString> ops;
  ops.reserve(generators_.size());
  for (const auto& g : generators_) ops.push_back(g.op);
  return ops;
}

std::size_t StabilizerCode::expected_rank() const {
  return qubit_count() - (lattice_.periodic() ? 2 : 1);
}

StabilizerCode build_surface_code(const LatticeSpec& spec) {
  if (spec.periodic()) throw std::invalid_argument("surface code needs open boundaries");
  const int lx = spec.lx();
  const int ly = spec.ly();
  std::vector<Generator> gens;
  for (int i = 1; i < lx; ++i) {
    for (int j = 1; j < ly; ++j) {
      gens.push_back({plaquette(spec, i, j),
                      x_type(i, j) ? GeneratorFamily::XBulk : GeneratorFamily::ZBulk, {i, j}});
    }
  }
  for (int i : {1, lx}) {
    const int ci = i < lx ? i : lx - 1;
    for (int j = 1; j < ly; ++j) {
      if (!x_type(ci, j)) continue;
      gens.push_back({on_sites(spec, {{i, j}, {i, j + 1}}, PauliLetter::Z),
                      GeneratorFamily::ZBoundary, {i, j}});
    }
  }
  for (int j : {1, ly}) {
    const int cj = j < ly ? j : ly - 1;
    for (int i = 1; i < lx; ++i) {
      if (x_type(i, cj)) continue;
      gens.push_back({on_sites(spec, {{i, j}, {i + 1, j}}, PauliLetter::X),
                      GeneratorFamily::XBoundary, {i, j}});
    }
  }
  std::vector<LogicalPair> logicals{{row_string(spec, 1, PauliLetter::X),
                                     column_string(spec, 1, PauliLetter::Z)}};
  StabilizerCode code(spec, std::move(gens), std::move(logicals));
  ensure_valid(code);
  return code;
}

StabilizerCode build_toric_code(const LatticeSpec& spec) {
  if (!spec.periodic()) throw std::invalid_argument("toric code needs periodic boundaries");
  std::vector<Generator> gens;
  for (int i = 1; i <= spec.lx(); ++i) {
    for (int j = 1; j <= spec.ly(); ++j) {
      gens.push_back({plaquette(spec, i, j),
                      x_type(i, j) ? GeneratorFamily::XBulk : GeneratorFamily::ZBulk, {i, j}});
    }
  }
  std::vector<LogicalPair> logicals{
      {row_string(spec, 1, PauliLetter::X), column_string(spec, 1, PauliLetter::Z)},
      {row_string(spec, 1, PauliLetter::Z), column_string(spec, 1, PauliLetter::X)}};
  StabilizerCode code(spec, std::move(gens), std::move(logicals));
  ensure_valid(code);
  return code;
}

StabilizerCode build_code(const LatticeSpec& spec) {
  return spec.periodic() ? build_toric_code(spec) : build_surface_code(spec);
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  out << (passed ? "pass" : "fail") << ", rank " << rank << "/" << expected_rank;
  if (!anticommuting_generators.empty()) {
    out << ", " << anticommuting_generators.size() << " anticommuting generator pair(s)";
  }
  if (!logical_violations.empty()) {
    out << ", " << logical_violations.size() << " logical/generator conflict(s)";
  }
  if (logicals_in_group) out << ", logical inside stabilizer group";
  if (!products_identity) out << ", periodic generator products are not identity";
  return out.str();
}

ValidationReport validate_code(const StabilizerCode& code) {
  ValidationReport r;
  const auto& gens = code.generators();
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      if (!gens[a].op.commutes_with(gens[b].op)) r.anticommuting_generators.emplace_back(a, b);
    }
  }
  const auto& logicals = code.logicals();
  for (std::size_t g = 0; g < gens.size(); ++g) {
    for (std::size_t k = 0; k < logicals.size(); ++k) {
      if (!gens[g].op.commutes_with(logicals[k].x)) r.logical_violations.push_back({g, k, 'X'});
      if (!gens[g].op.commutes_with(logicals[k].z)) r.logical_violations.push_back({g, k, 'Z'});
    }
  }
  const auto ops = code.generator_ops();
  r.rank = gf2_rank(ops);
  r.expected_rank = code.expected_rank();

  bool matrix_ok = true;
  r.logical_matrix.assign(logicals.size(), std::vector<int>(logicals.size(), 0));
  for (std::size_t a = 0; a < logicals.size(); ++a) {
    for (std::size_t b = 0; b < logicals.size(); ++b) {
      const int anti = logicals[a].x.commutes_with(logicals[b].z) ? 0 : 1;
      r.logical_matrix[a][b] = anti;
      if (anti != (a == b ? 1 : 0)) matrix_ok = false;
    }
    for (std::size_t b = a + 1; b < logicals.size(); ++b) {
      if (!logicals[a].x.commutes_with(logicals[b].x) ||
          !logicals[a].z.commutes_with(logicals[b].z)) {
        matrix_ok = false;
      }
    }
    if (gf2_in_span(ops, logicals[a].x) || gf2_in_span(ops, logicals[a].z)) {
      r.logicals_in_group = true;
    }
  }

  if (code.lattice().periodic()) {
    PauliString px;
    PauliString pz;
    for (const auto& g : gens) {
      if (g.family == GeneratorFamily::XBulk) px *= g.op;
      if (g.family == GeneratorFamily::ZBulk) pz *= g.op;
    }
    r.products_identity = px.is_identity() && pz.is_identity();
  }

  const std::size_t expected_logicals = code.lattice().periodic() ? 2 : 1;
  r.passed = r.anticommuting_generators.empty() && r.logical_violations.empty() &&
             r.rank == r.expected_rank && matrix_ok && !r.logicals_in_group &&
             r.products_identity && logicals.size() == expected_logicals;
  return r;
}

bool in_stabilizer_group(const StabilizerCode& code, const PauliString& p) {
  for (const auto& g : code.generators()) {
    if (!g.op.commutes_with(p)) {
      throw std::invalid_argument("operator anticommutes with generator " +
                                  format_pauli(g.op, code.lattice()));
    }
  }
  const auto ops = code.generator_ops();
  return gf2_in_span(ops, p);
}

std::string describe_code(const StabilizerCode& code) {
  const auto& lat = code.lattice();
  std::ostringstream out;
  out << "# code " << (lat.periodic() ? "toric" : "surface") << " " << lat.label() << "\n";
  out << "# qubits " << code.qubit_count() << ", generators " << code.generators().size()
      << ", rank " << gf2_rank(code.generator_ops()) << ", logical qubits "
      << code.logicals().size() << "\n";
  for (const auto& g : code.generators()) {
    out << to_string(g.family) << "\t" << format_pauli(g.op, lat) << "\n";
  }
  for (std::size_t k = 0; k < code.logicals().size(); ++k) {
    out << "logical_X" << k + 1 << "\t" << format_pauli(code.logicals()[k].x, lat) << "\n";
    out << "logical_Z" << k + 1 << "\t" << format_pauli(code.logicals()[k].z, lat) << "\n";
  }
  return out.str();
}

}  // namespace fdtc
