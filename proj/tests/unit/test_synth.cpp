#include <numbers>
#include <random>

#include "doctest.h"
#include "fdtc/synth.hpp"
#include "oracle.hpp"

using namespace fdtc;

namespace {

constexpr double kPi = std::numbers::pi;

struct Builtin {
  Backend backend;
  StabilizerType type;
  Site corner;
  LatticeSpec lattice;
};

std::vector<Builtin> builtins() {
  const LatticeSpec s22(2, 2, Boundary::Open);
  const LatticeSpec s32(3, 2, Boundary::Open);
  const LatticeSpec s23(2, 3, Boundary::Open);
  return {
      {Backend::NativeTwoQubit, StabilizerType::SZ, {1, 1}, s22},
      {Backend::NativeTwoQubit, StabilizerType::SX, {1, 1}, s22},
      {Backend::NativeTwoQubit, StabilizerType::SZ, {2, 1}, s32},
      {Backend::NativeTwoQubit, StabilizerType::SX, {1, 2}, s23},
      {Backend::TrappedIon, StabilizerType::SX, {2, 1}, s32},
      {Backend::TrappedIon, StabilizerType::SZ, {2, 1}, s32},
      {Backend::TrappedIon, StabilizerType::SX, {1, 1}, s22},
      {Backend::TrappedIon, StabilizerType::SZ, {1, 1}, s22},
  };
}

// Independent dense check: W^dagger exp(-i theta seed) W against exp(-i theta target),
// with W assembled from oracle matrices on the full lattice.
double oracle_error(const SynthesisChain& c, double theta) {
  const std::size_t n = c.lattice.qubit_count();
  const oracle::Mat id = oracle::Mat::Identity(1 << n, 1 << n);
  oracle::Mat w = id;
  for (const auto& g : c.chain.gates) {
    if (const auto* r = std::get_if<PauliRotation>(&g)) {
      w = w * oracle::expm_rotation(r->theta, r->axis, n);
    } else {
      const auto& s = std::get<ISwapGate>(g);
      PauliString xx = PauliString::single(s.a, PauliLetter::X) * PauliString::single(s.b, PauliLetter::X);
      PauliString yy = PauliString::single(s.a, PauliLetter::Y) * PauliString::single(s.b, PauliLetter::Y);
      const oracle::Mat gen = oracle::cd(0, -kPi / 4) * (oracle::pauli(xx, n) + oracle::pauli(yy, n));
      oracle::Mat m = gen.exp();
      if (s.dagger) m = m.adjoint().eval();
      w = w * m;
    }
  }
  oracle::Mat seed = id;
  for (const auto& p : c.seed_terms) seed = seed * oracle::expm_rotation(theta, p, n);
  oracle::Mat target = id;
  for (const auto& p : c.targets) target = target * oracle::expm_rotation(theta, p, n);
  const oracle::Mat lhs = w.adjoint() * seed * w;
  const oracle::cd tr = (target.adjoint() * lhs).trace();
  const oracle::cd phase = std::abs(tr) > 0 ? tr / std::abs(tr) : oracle::cd(1, 0);
  return oracle::max_abs(lhs - phase * target);
}

SynthesisChain flip_sign(SynthesisChain c, std::size_t gate) {
  auto& r = std::get<PauliRotation>(c.chain.gates.at(gate));
  r.theta = -r.theta;
  return c;
}

}  // namespace

TEST_CASE("native SZ chain matches the ladder") {
  const LatticeSpec lat(2, 2, Boundary::Open);
  const auto c = builtin_chain(Backend::NativeTwoQubit, StabilizerType::SZ, {1, 1}, lat);
  REQUIRE(c.chain.gates.size() == 6);
  CHECK(format_gate(c.chain.gates[0], lat) == "ISWAP@(1,1),(2,1)");
  CHECK(format_gate(c.chain.gates[4], lat) == "RY(+pi/4)@(1,2)");
  CHECK(format_gate(c.chain.gates[5], lat) == "RY(+pi/4)@(2,2)");
  const auto r = verify_symbolic(c);
  CHECK(r.passed);
  CHECK(format_pauli(r.final_axes[0], lat) == "Z@(1,1) Z@(1,2) Z@(2,1) Z@(2,2)");
  CHECK(r.signs[0] == 1);
  // After the first iSWAP the axis is Z Y, matching the stated identity.
  CHECK(format_pauli(axis_trace(c.chain, c.seed_terms[0])[0], lat) == "Z@(1,1) Y@(2,1)");
}

TEST_CASE("trapped-ion SX chain passes through YY terms") {
  const LatticeSpec lat(3, 2, Boundary::Open);
  const auto c = builtin_chain(Backend::TrappedIon, StabilizerType::SX, {2, 1}, lat);
  REQUIRE(c.seed_terms.size() == 2);
  const auto& cp = c.checkpoints.front();
  CHECK(format_pauli(cp.expected[0], lat) == "Y@(2,1) Y@(3,1)");
  CHECK(format_pauli(cp.expected[1], lat) == "Y@(1,1) Y@(2,1)");
  for (std::size_t t = 0; t < 2; ++t) CHECK(axis_trace(c.chain, c.seed_terms[t])[cp.gate_index] == cp.expected[t]);
  const auto r = verify_symbolic(c);
  CHECK(r.passed);
  CHECK(format_pauli(r.final_axes[0], lat) == "X@(2,1) X@(2,2) X@(3,1) X@(3,2)");
  CHECK(format_pauli(r.final_axes[1], lat) == "X@(1,1) X@(1,2) X@(2,1) X@(2,2)");
}

TEST_CASE("built-in chains pass symbolic and numeric verification") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  for (const auto& b : builtins()) {
    const auto c = builtin_chain(b.backend, b.type, b.corner, b.lattice);
    INFO(to_string(b.backend) << " " << to_string(b.type) << " " << b.lattice.label());
    const auto r = verify_symbolic(c);
    CHECK(r.passed);
    CHECK_FALSE(r.divergence.has_value());
    CHECK(verify_numeric(c, 0.0) < 1e-12);
    CHECK(verify_numeric(c, 0.7) < 1e-10);
    CHECK(oracle_error(c, 0.7) < 1e-10);
    for (int trial = 0; trial < 20; ++trial) CHECK(verify_numeric(c, angle(rng)) < 1e-10);
  }
}

TEST_CASE("mutated chains fail at the first divergent gate") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.1, kPi - 0.1);
  const LatticeSpec lat(2, 2, Boundary::Open);
  const auto good = builtin_chain(Backend::NativeTwoQubit, StabilizerType::SZ, {1, 1}, lat);
  const auto bad = flip_sign(good, 1);
  const auto r = verify_symbolic(bad);
  CHECK_FALSE(r.passed);
  REQUIRE(r.divergence.has_value());
  CHECK(*r.divergence == 1);
  CHECK(r.signs[0] == -1);

  for (const auto& b : builtins()) {
    const auto c = builtin_chain(b.backend, b.type, b.corner, b.lattice);
    for (std::size_t g = 0; g < c.chain.gates.size(); ++g) {
      if (!std::holds_alternative<PauliRotation>(c.chain.gates[g])) continue;
      const auto m = flip_sign(c, g);
      const bool symbolic = verify_symbolic(m).passed;
      const bool numeric = verify_numeric(m, angle(rng)) < 1e-10;
      CHECK(symbolic == numeric);
      CHECK_FALSE(symbolic);
    }
  }
}

TEST_CASE("circuit text round trip") {
  for (const auto& b : builtins()) {
    const auto c = builtin_chain(b.backend, b.type, b.corner, b.lattice);
    const std::string text = format_chain(c);
    const auto parsed = parse_chain("# generated\n" + text + "\n", b.lattice, b.backend);
    CHECK(format_chain(parsed) == text);
    CHECK(parsed.seed_terms == c.seed_terms);
    CHECK(parsed.targets == c.targets);
    CHECK(verify_symbolic(parsed).passed);
  }
  const LatticeSpec lat(2, 2, Boundary::Open);
  CHECK_THROWS_AS(parse_chain("ISWAP@(1,1),(2,1)\n", lat, Backend::NativeTwoQubit), std::invalid_argument);
  CHECK_THROWS_AS(parse_chain("SEED X@(1,1)\n", lat, Backend::NativeTwoQubit), std::invalid_argument);
  const auto generic = parse_chain("SEED X@(1,1)\nTARGET Z@(1,1)\nRY(0.3)@(1,1)\n", lat, Backend::NativeTwoQubit);
  CHECK_THROWS_AS(verify_symbolic(generic), std::invalid_argument);
}

TEST_CASE("invalid corners and oversized patches are rejected") {
  const LatticeSpec lat(2, 2, Boundary::Open);
  CHECK_THROWS_AS(builtin_chain(Backend::NativeTwoQubit, StabilizerType::SZ, {2, 2}, lat), std::invalid_argument);
  CHECK_THROWS_AS(builtin_chain(Backend::TrappedIon, StabilizerType::SX, {1, 2}, lat), std::invalid_argument);
  CHECK_THROWS_AS(builtin_chain(Backend::TrappedIon, StabilizerType::SX, {3, 1}, lat), std::invalid_argument);
  const auto big = builtin_chain(Backend::TrappedIon, StabilizerType::SX, {2, 1}, LatticeSpec(3, 3, Boundary::Open));
  CHECK(verify_symbolic(big).passed);
  CHECK_THROWS_AS(verify_numeric(big, 0.4), std::invalid_argument);
  CHECK(verify_numeric(big, 0.4, 9) < 1e-10);
  CHECK(backend_from_string("trapped-ion") == Backend::TrappedIon);
  CHECK(stabilizer_type_from_string("SZ") == StabilizerType::SZ);
  CHECK_THROWS_AS(backend_from_string("laser"), std::invalid_argument);
}
