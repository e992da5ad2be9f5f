#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdtc/clifford.hpp"

namespace fdtc {

enum class Backend { TrappedIon, NativeTwoQubit };
enum class StabilizerType { SX, SZ };

std::string to_string(Backend b);
std::string to_string(StabilizerType t);
Backend backend_from_string(const std::string& text);
StabilizerType stabilizer_type_from_string(const std::string& text);

struct Checkpoint {
  std::size_t gate_index;              // axes expected after this gate
  std::vector<PauliString> expected;   // one per seed term
};

/// Seed rotation exp(-i theta sum seed_terms) carried through `chain`; the
/// seed terms pairwise commute, as do the targets.
struct SynthesisChain {
  Backend backend = Backend::NativeTwoQubit;
  LatticeSpec lattice{2, 2, Boundary::Open};
  std::vector<PauliString> seed_terms;
  std::vector<PauliString> targets;
  CliffordSequence chain;
  std::vector<Checkpoint> checkpoints;
};

/// Built-in chains with corner (i,j):
///  NativeTwoQubit SZ: iSWAP ladder on the plaquette at (i,j) starting from X_{i,j}.
///  NativeTwoQubit SX: the SZ chain followed by pi/4 Y rotations on the plaquette.
///  TrappedIon: nearest-neighbour Ising seed Z_{i,j}Z_{i+-1,j}, then X rotations on
///  column j, then XZ rotations coupling columns j and j+1 (plus Y rotations for SZ).
/// Terms reaching outside the lattice are dropped. Throws std::invalid_argument
/// when the corner leaves no valid term.
SynthesisChain builtin_chain(Backend backend, StabilizerType type, Site corner, const LatticeSpec& lattice);

struct SymbolicResult {
  bool passed = false;
  std::vector<PauliString> final_axes;
  /// +1 or -1 when the final axis matches the target up to that sign, 0 otherwise.
  std::vector<int> signs;
  /// Index of the first gate after which the axis departs from the recorded
  /// checkpoints (or the last gate when only the final axis is wrong).
  std::optional<std::size_t> divergence;
};

/// Propagates the seed axes through the chain. Passes iff every final axis
/// equals its target with sign +1 and all checkpoints match.
SymbolicResult verify_symbolic(const SynthesisChain& chain);

/// Qubits touched by the chain, its seed and its targets.
std::vector<std::size_t> active_patch(const SynthesisChain& chain);

/// max-norm distance (up to a global phase) between W^dagger exp(-i theta seed) W
/// and exp(-i theta target). Throws std::invalid_argument when the active patch
/// exceeds `max_patch` qubits.
double verify_numeric(const SynthesisChain& chain, double theta, std::size_t max_patch = 6);

/// Circuit file: "SEED <pauli>" and "TARGET <pauli>" lines, one gate per line,
/// '#' comments.
SynthesisChain parse_chain(std::string_view text, const LatticeSpec& lattice, Backend backend);
std::string format_chain(const SynthesisChain& chain);

}  // namespace fdtc
