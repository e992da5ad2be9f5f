#include <numbers>
#include <random>

#include "doctest.h"
#include "fdtc/clifford.hpp"
#include "fdtc/code.hpp"
#include "oracle.hpp"

using namespace fdtc;

namespace {

constexpr double kPi = std::numbers::pi;

PauliString P(const char* text, const LatticeSpec& lat) { return parse_pauli(text, lat); }

}  // namespace

TEST_CASE("single-site products carry exact phases") {
  const auto z = PauliString::single(0, PauliLetter::Z);
  const auto x = PauliString::single(0, PauliLetter::X);
  const auto zx = z * x;
  CHECK(zx.letter(0) == PauliLetter::Y);
  CHECK(zx.phase_exponent() == 1);
  CHECK((x * z).phase_exponent() == 3);

  const auto xx = PauliString::from_masks(0b11, 0);
  const auto id = xx * xx;
  CHECK(id.is_identity());
  CHECK(id.phase_exponent() == 0);
}

TEST_CASE("multiply and commutes agree with Kronecker matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    const auto p = oracle::random_pauli(rng, n);
    const auto q = oracle::random_pauli(rng, n);
    const auto mp = oracle::pauli(p, n);
    const auto mq = oracle::pauli(q, n);
    CHECK(oracle::max_abs(oracle::pauli(p * q, n) - mp * mq) < 1e-12);
    const bool mat_commutes = oracle::max_abs(mp * mq - mq * mp) < 1e-12;
    CHECK(commutes(p, q) == mat_commutes);
  }
}

TEST_CASE("logical product on the 2x2 surface code matches the matrix oracle") {
  const LatticeSpec lat(2, 2, Boundary::Open);
  const auto code = build_surface_code(lat);
  const auto& zb = code.logicals()[0].z;
  const auto& xb = code.logicals()[0].x;
  const auto mz = oracle::pauli(zb, 4);
  const auto mx = oracle::pauli(xb, 4);
  CHECK(oracle::max_abs(oracle::pauli(zb * xb, 4) - mz * mx) < 1e-12);
  CHECK(oracle::max_abs(oracle::pauli(xb * zb, 4) + mz * mx) < 1e-12);
  CHECK_FALSE(commutes(zb, xb));
}

TEST_CASE("tilde row operator commutation matches the matrix oracle") {
  for (int ly : {2, 3, 4}) {
    const LatticeSpec lat(2, ly, Boundary::Open);
    const auto code = build_surface_code(lat);
    PauliString ht = PauliString::single(lat.index(1, 1), PauliLetter::Y);
    ht.set_letter(lat.index(2, 1), PauliLetter::Z);
    const auto& xb = code.logicals()[0].x;
    const std::size_t n = lat.qubit_count();
    const auto a = oracle::pauli(ht, n);
    const auto b = oracle::pauli(xb, n);
    CHECK(commutes(ht, xb) == (oracle::max_abs(a * b - b * a) < 1e-12));
  }
}

TEST_CASE("symplectic round trip is lossless") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = oracle::random_pauli(rng, 6);
    const auto v = to_symplectic(p, 6);
    CHECK(from_symplectic(v) == p);
    const auto q = oracle::random_pauli(rng, 6);
    CHECK((symplectic_form(v, to_symplectic(q, 6)) == 0) == commutes(p, q));
  }
}

TEST_CASE("GF(2) rank and span agree with dense elimination") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PauliString> rows;
    for (int k = 0; k < 7; ++k) rows.push_back(oracle::random_pauli(rng, 4, false));
    rows.push_back(rows[0] * rows[1]);
    CHECK(gf2_rank(rows) == oracle::dense_rank(rows, 4));
    CHECK(gf2_in_span(rows, rows[2] * rows[3]));
    auto extended = rows;
    const auto probe = oracle::random_pauli(rng, 4, false);
    extended.push_back(probe);
    CHECK(gf2_in_span(rows, probe) == (oracle::dense_rank(extended, 4) == oracle::dense_rank(rows, 4)));
    CHECK(gf2_independent_subset(rows).size() == gf2_rank(rows));
  }
}

TEST_CASE("lattice text form round trips") {
  const LatticeSpec lat(3, 3, Boundary::Open);
  const auto p = P("X@(1,1) Y@(2,3) Z@(3,3)", lat);
  CHECK(p.weight() == 3);
  CHECK(format_pauli(p, lat) == "X@(1,1) Y@(2,3) Z@(3,3)");
  CHECK(parse_pauli(format_pauli(-p, lat), lat) == -p);
  CHECK(format_pauli(PauliString{}, lat) == "I");
  CHECK_THROWS_AS(P("X@(4,1)", lat), std::invalid_argument);
  CHECK_THROWS_AS(P("Q@(1,1)", lat), std::invalid_argument);
}

TEST_CASE("euler_conjugate gives exact coefficients") {
  const auto y = PauliString::single(0, PauliLetter::Y);
  const auto x = PauliString::single(0, PauliLetter::X);
  const auto quarter = euler_conjugate(kPi / 4, y, x);
  REQUIRE(quarter.is_single());
  const auto collapsed = quarter.collapse();
  CHECK(collapsed.letter(0) == PauliLetter::Z);
  CHECK(collapsed == (y * x).with_phase((y * x).phase_exponent() + 3));

  const auto eighth = euler_conjugate(kPi / 8, y, x);
  CHECK(eighth.c1.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(eighth.c2.imag() == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(euler_conjugate(0.3, x, x), std::invalid_argument);
}

TEST_CASE("euler_conjugate matches dense conjugation on random 3-qubit strings") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  int tested = 0;
  while (tested < 40) {
    const auto p1 = oracle::random_pauli(rng, 3, false);
    const auto p2 = oracle::random_pauli(rng, 3);
    if (commutes(p1, p2)) continue;
    const double theta = angle(rng);
    const auto c = euler_conjugate(theta, p1, p2);
    const auto u = oracle::expm_rotation(theta, p1, 3);
    const oracle::Mat lhs = u * oracle::pauli(p2, 3) * u.adjoint();
    const oracle::Mat rhs = c.c1 * oracle::pauli(c.p1, 3) + c.c2 * oracle::pauli(c.p2, 3);
    CHECK(oracle::max_abs(lhs - rhs) < 1e-12);
    ++tested;
  }
}

TEST_CASE("iSWAP carries X to Z Y") {
  const LatticeSpec lat(2, 2, Boundary::Open);
  const ISwapGate g{lat.index(1, 1), lat.index(2, 1)};
  const auto image = conjugate_by_gate(g, P("X@(1,1)", lat));
  CHECK(image == P("Z@(1,1) Y@(2,1)", lat));
}

TEST_CASE("gate conjugation matches dense G^dagger P G") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = oracle::random_pauli(rng, 3);
    CliffordGate gate;
    oracle::Mat g;
    if (trial % 2 == 0) {
      const std::size_t a = static_cast<std::size_t>(trial % 3);
      const std::size_t b = (a + 1 + static_cast<std::size_t>(trial / 2 % 2)) % 3;
      const bool dagger = trial % 4 == 0;
      gate = ISwapGate{a, b, dagger};
      PauliString xx;
      xx.set_letter(a, PauliLetter::X);
      xx.set_letter(b, PauliLetter::X);
      PauliString yy;
      yy.set_letter(a, PauliLetter::Y);
      yy.set_letter(b, PauliLetter::Y);
      const oracle::Mat gen = oracle::cd(0, -kPi / 4) * (oracle::pauli(xx, 3) + oracle::pauli(yy, 3));
      g = gen.exp();
      if (dagger) g = g.adjoint().eval();
    } else {
      const auto axis = oracle::random_pauli(rng, 3, false);
      if (axis.is_identity()) continue;
      const double theta = trial % 3 == 0 ? -kPi / 4 : kPi / 4;
      gate = PauliRotation{theta, axis};
      g = oracle::expm_rotation(theta, axis, 3);
    }
    const oracle::Mat want = g.adjoint() * oracle::pauli(p, 3) * g;
    CHECK(oracle::max_abs(oracle::pauli(conjugate_by_gate(gate, p), 3) - want) < 1e-12);
  }
}

TEST_CASE("conjugate_rotation keeps the angle and inverts cleanly") {
  const LatticeSpec lat(2, 2, Boundary::Open);
  CliffordSequence empty;
  const PauliRotation seed{0.7, P("X@(1,1)", lat)};
  const auto same = conjugate_rotation(empty, seed);
  CHECK(same.axis == seed.axis);
  CHECK(same.theta == 0.7);

  CliffordSequence seq;
  seq.gates.emplace_back(ISwapGate{0, 2});
  seq.gates.emplace_back(PauliRotation{kPi / 4, P("Y@(1,1) Z@(2,2)", lat)});
  seq.gates.emplace_back(ISwapGate{1, 3});
  seq.gates.emplace_back(PauliRotation{-kPi / 4, P("X@(2,1)", lat)});
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = oracle::random_pauli(rng, 4);
    const auto there = conjugate_rotation(seq, {0.3, p});
    CHECK(there.theta == 0.3);
    CHECK(there.axis.weight() <= 4);
    const auto back = conjugate_rotation(inverse(seq), there);
    CHECK(back.axis == p);
  }
}

TEST_CASE("non-Clifford rotations are rejected") {
  const PauliRotation bad{0.3, PauliString::single(0, PauliLetter::X)};
  CHECK_FALSE(is_clifford(bad));
  CHECK_THROWS_AS(conjugate_by_gate(bad, PauliString::single(0, PauliLetter::Z)), std::invalid_argument);
}

TEST_CASE("gate text format round trips") {
  const LatticeSpec lat(3, 2, Boundary::Open);
  for (const char* text : {"RX(+pi/4)@(1,1)", "RZX(-pi/4)@(2,1),(2,2)", "ISWAP@(1,1),(2,1)", "ISWAPDG@(3,2),(3,1)"}) {
    const auto g = parse_gate(text, lat);
    CHECK(format_gate(g, lat) == text);
  }
  CHECK(format_gate(parse_gate("RXZ(-pi/4)@(2,2),(2,1)", lat), lat) == "RZX(-pi/4)@(2,1),(2,2)");
  CHECK(parse_angle("-0.25pi") == doctest::Approx(-kPi / 4));
  CHECK(parse_angle("0.7") == doctest::Approx(0.7));
  CHECK(parse_angle("pi") == doctest::Approx(kPi));
  CHECK_THROWS_AS(parse_gate("RX(+pi/4)@(4,1)", lat), std::invalid_argument);
  CHECK_THROWS_AS(parse_gate("RXX(+pi/4)@(1,1)", lat), std::invalid_argument);
  CHECK_THROWS_AS(parse_gate("FOO@(1,1)", lat), std::invalid_argument);
}
