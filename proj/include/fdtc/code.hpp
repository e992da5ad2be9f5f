#pragma once

#include <string>
#include <vector>

#include "fdtc/lattice.hpp"
#include "fdtc/pauli.hpp"

namespace fdtc {

enum class GeneratorFamily { XBulk, ZBulk, ZBoundary, XBoundary };

std::string to_string(GeneratorFamily f);

struct Generator {
  PauliString op;
  GeneratorFamily family;
  Site corner;  // top-left site of the plaquette or first site of a pair
};

struct LogicalPair {
  PauliString x;
  PauliString z;
};

/// Stabilizer generators and logical operators on a lattice. Use the
/// builders below for validated codes; the raw constructor performs no checks.
class StabilizerCode {
 public:
  StabilizerCode(LatticeSpec lattice, std::vector<Generator> generators,
                 std::vector<LogicalPair> logicals);

  const LatticeSpec& lattice() const noexcept { return lattice_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const std::vector<LogicalPair>& logicals() const noexcept { return logicals_; }
  std::size_t qubit_count() const noexcept { return lattice_.qubit_count(); }

  std::vector<PauliString> generator_ops() const;
  /// Rank the generators must reach: N-1 open, N-2 periodic.
  std::size_t expected_rank() const;

 private:
  LatticeSpec lattice_;
  std::vector<Generator> generators_;
  std::vector<LogicalPair> logicals_;
};

StabilizerCode build_surface_code(const LatticeSpec& spec);
StabilizerCode build_toric_code(const LatticeSpec& spec);
/// Surface code for open lattices, toric code for periodic ones.
StabilizerCode build_code(const LatticeSpec& spec);

struct ValidationReport {
  std::vector<std::pair<std::size_t, std::size_t>> anticommuting_generators;
  /// (generator index, logical index, 'X' or 'Z')
  struct LogicalViolation {
    std::size_t generator;
    std::size_t logical;
    char which;
  };
  std::vector<LogicalViolation> logical_violations;
  std::size_t rank = 0;
  std::size_t expected_rank = 0;
  /// entry [a][b] is 1 when X̄_a anticommutes with Z̄_b.
  std::vector<std::vector<int>> logical_matrix;
  bool logicals_in_group = false;
  bool products_identity = true;
  bool passed = false;

  std::string summary() const;
};

ValidationReport validate_code(const StabilizerCode& code);

/// Whether P (phase ignored) lies in the stabilizer group. Throws
/// std::invalid_argument if P anticommutes with some generator.
bool in_stabilizer_group(const StabilizerCode& code, const PauliString& p);

/// One generator per line with family labels, then the logicals.
std::string describe_code(const StabilizerCode& code);

}  // namespace fdtc
