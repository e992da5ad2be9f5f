#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fdtc/harness.hpp"

using namespace fdtc;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::shared_ptr<const StabilizerCode> make_code(int lx, int ly, Boundary b) {
  return std::make_shared<const StabilizerCode>(build_code(LatticeSpec(lx, ly, b)));
}

ModelInstance ideal_instance_with_couplings(std::shared_ptr<const StabilizerCode> code, Regime regime,
                                            std::uint64_t seed) {
  ModelInstance inst{code, ideal_parameters(*code, regime), seed};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& j : inst.params.couplings) j = u(rng);
  return inst;
}

EnsembleSpec ensemble(const ExperimentConfig& c, const DisorderSpec& d) {
  EnsembleSpec e;
  e.code = make_code(c.lattice.lx(), c.lattice.ly(), c.lattice.boundary());
  e.disorder = d;
  e.realizations = c.realizations;
  e.seed = c.seed;
  e.workers = c.workers;
  return e;
}

std::vector<double> series_of(const std::vector<DiagnosticSeries>& s, const std::string& name) {
  for (const auto& d : s) {
    if (d.observable == name) return d.mean;
  }
  return {};
}

Outcome code_validity() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<LatticeSpec> specs;
  for (int lx = 2; lx <= 5; ++lx) {
    for (int ly = 2; ly <= 5; ++ly) specs.emplace_back(lx, ly, Boundary::Open);
  }
  for (auto [lx, ly] : {std::pair{2, 2}, std::pair{2, 4}, std::pair{4, 4}}) specs.emplace_back(lx, ly, Boundary::Periodic);
  std::string bad;
  for (const auto& s : specs) {
    const auto r = validate_code(build_code(s));
    const std::size_t n = s.qubit_count();
    const std::size_t want = s.periodic() ? n - 2 : n - 1;
    const std::size_t k = s.periodic() ? 2 : 1;
    bool logical_ok = r.logical_matrix.size() == k;
    for (std::size_t a = 0; a < r.logical_matrix.size() && logical_ok; ++a) {
      for (std::size_t b = 0; b < r.logical_matrix[a].size(); ++b) {
        if (r.logical_matrix[a][b] != (a == b ? 1 : 0)) logical_ok = false;
      }
    }
    if (!r.passed || r.rank != want || !r.anticommuting_generators.empty() || !r.logical_violations.empty() ||
        !logical_ok) {
      bad += " " + s.label();
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = bad.empty() && secs < 1.0;
  return {ok, std::to_string(specs.size()) + " codes, " + fmt("%.3f s", secs) + (bad.empty() ? "" : ", failing:" + bad)};
}

Outcome ideal_point() {
  double dyn_err = 0.0;
  double vec_err = 0.0;
  double gap_err = 0.0;
  double eps_err = 0.0;
  for (int l : {2, 3}) {
    const auto code = make_code(l, l, Boundary::Open);
    const auto inst = ideal_instance_with_couplings(code, Regime::DTC2T, 100 + l);
    const auto& lg = code->logicals().front();
    for (const InitialState init : {InitialState{PauliLetter::Y, 0.0}, InitialState{PauliLetter::Y, kPi / 8}}) {
      StateVector psi = init.prepare(code->qubit_count());
      const double z0 = expectation(psi, lg.z).real();
      const double x0 = expectation(psi, lg.x).real();
      if (init.theta == 0.0) dyn_err = std::max(dyn_err, std::abs(z0 - 1.0));
      for (int n = 0; n <= 100; ++n) {
        const double sign = n % 2 ? -1.0 : 1.0;
        dyn_err = std::max(dyn_err, std::abs(expectation(psi, lg.z).real() - sign * z0));
        dyn_err = std::max(dyn_err, std::abs(expectation(psi, lg.x).real() - sign * x0));
        evolve_period(psi, inst);
      }
    }
    const Eigen::MatrixXcd u = build_floquet_unitary(inst).matrix;
    const Eigen::VectorXcd zero = logical_basis_state(*code, {0}).amplitudes();
    const Eigen::VectorXcd one = logical_basis_state(*code, {1}).amplitudes();
    const std::complex<double> i(0, 1);
    double eps[2];
    int k = 0;
    for (double s : {1.0, -1.0}) {
      const Eigen::VectorXcd v = (zero + s * i * one) / std::sqrt(2.0);
      const Eigen::VectorXcd uv = u * v;
      const std::complex<double> lambda = v.dot(uv);
      vec_err = std::max(vec_err, (uv - lambda * v).cwiseAbs().maxCoeff());
      eps[k++] = fold_quasienergy(-std::arg(lambda));
    }
    gap_err = std::max(gap_err, std::abs(std::abs(fold_quasienergy(eps[0] - eps[1])) - kPi));
    eps_err = std::max(eps_err, std::abs(fold_quasienergy(eps[0] - ideal_quasienergy_plus(inst))));
  }
  const bool ok = dyn_err < 1e-10 && vec_err < 1e-9 && gap_err < 1e-9 && eps_err < 1e-10;
  return {ok, "dynamics err " + fmt("%.1e", dyn_err) + ", eigvec residual " + fmt("%.1e", vec_err) + ", gap err " +
                  fmt("%.1e", gap_err) + ", eps+ err " + fmt("%.1e", eps_err)};
}

Outcome fig23() {
  auto base = preset_config("fig2b");
  base.workers = 4;
  const auto s33 = stroboscopic_dynamics(ensemble(base, base.disorder), base.dynamics.initial,
                                         {resolve_observable(build_code(base.lattice), "Zbar"),
                                          resolve_observable(build_code(base.lattice), "Xbar")},
                                         50);
  double min_z = 1e9;
  double min_x = 1e9;
  int first_bad = -1;
  const auto z = series_of(s33, "Zbar");
  const auto x = series_of(s33, "Xbar");
  for (int n = 0; n <= 50; ++n) {
    const double sign = n % 2 ? -1.0 : 1.0;
    min_z = std::min(min_z, sign * z[n]);
    min_x = std::min(min_x, sign * x[n]);
    if (first_bad < 0 && (sign * z[n] <= 0.5 || sign * x[n] <= 0.5)) first_bad = n;
  }
  auto averaged = [&](const char* preset) {
    auto c = preset_config(preset);
    c.workers = 4;
    const auto code = build_code(c.lattice);
    const auto s = stroboscopic_dynamics(ensemble(c, c.disorder), c.dynamics.initial,
                                         {resolve_observable(code, "Zbar")}, 50);
    double acc = 0.0;
    for (int n = 1; n <= 50; ++n) acc += std::abs(s[0].mean[n]);
    return acc / 50.0;
  };
  const double a23 = averaged("fig3a");
  const double a24 = averaged("fig3b");
  const bool ok = min_z > 0.5 && min_x > 0.5 && a24 > a23;
  return {ok, "3x3 min (-1)^n<Z> " + fmt("%.3f", min_z) + ", min (-1)^n<X> " + fmt("%.3f", min_x) +
                  (first_bad >= 0 ? " (first n at or below 0.5: " + std::to_string(first_bad) + ")" : "") +
                  "; mean |<Z>| 2x3 " + fmt("%.3f", a23) + " vs 2x4 " + fmt("%.3f", a24)};
}

double metric(const PhaseMetrics& m, const std::string& name) {
  for (const auto& d : m.spectral) {
    if (d.name == name) return d.mean;
  }
  for (const auto& d : m.sg) {
    if (d.name == name) return d.mean;
  }
  throw std::logic_error("no metric " + name);
}

Outcome fig4() {
  auto c = preset_config("fig4a");
  c.workers = 4;
  std::string detail;
  bool ok = true;
  double local_max = 0.0;
  for (double h : {0.475, 0.025, 0.25}) {
    const auto m = phase_metrics(ensemble(c, sweep_disorder(c.disorder, c.regime, h)), c.sweep.spectral);
    const double sz0 = metric(m, "s_Z_0"), sx0 = metric(m, "s_X_0");
    const double szp = metric(m, "s_Z_pi"), sxp = metric(m, "s_X_pi");
    const double hz = metric(m, "chi_HZ"), vx = metric(m, "chi_VX");
    double nonlocal = 0.0;
    for (const char* n : {"chi_HX", "chi_HY", "chi_HZ", "chi_VX", "chi_VY", "chi_VZ"}) {
      nonlocal = std::max(nonlocal, metric(m, n));
    }
    for (const char* n : {"chi_X", "chi_Y", "chi_Z"}) local_max = std::max(local_max, metric(m, n));
    bool point_ok = false;
    if (h == 0.475) point_ok = szp > 0.8 && sxp > 0.8 && vx > 0.2 && hz > 0.2;
    if (h == 0.025) point_ok = sz0 > 0.8 && sx0 > 0.8;
    if (h == 0.25) point_ok = std::max({sz0, sx0, szp, sxp}) < 0.1 && nonlocal < 0.1;
    ok = ok && point_ok;
    detail += fmt("h=%.3fpi", h) + (point_ok ? " ok" : " off") + " [s_Z0 " + fmt("%.3f", sz0) + " s_X0 " +
              fmt("%.3f", sx0) + " s_Zpi " + fmt("%.3f", szp) + " s_Xpi " + fmt("%.3f", sxp) + " chi_HZ " +
              fmt("%.3f", hz) + " chi_VX " + fmt("%.3f", vx) + " max nonlocal " + fmt("%.3f", nonlocal) + "]; ";
  }
  const bool local_ok = local_max < 0.05;
  return {ok && local_ok, detail + "max local chi " + fmt("%.3f", local_max) + (local_ok ? " ok" : " off")};
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double min_abs_until(const std::vector<double>& v, const std::vector<double>& t, double t_max) {
  double m = 1e9;
  for (std::size_t k = 0; k < v.size() && t[k] <= t_max + 1e-12; ++k) m = std::min(m, std::abs(v[k]));
  return m;
}

Outcome fig5() {
  bool ok = true;
  std::string detail;
  for (char r : {'a', 'b', 'c', 'd'}) {
    auto c = preset_config(std::string("fig5") + r);
    c.workers = 4;
    const auto s = correlator_dynamics(ensemble(c, c.disorder), uniform_time_grid(c.correlators.points),
                                       c.correlators.floor);
    auto family = [&](const std::string& n) -> const std::vector<double>& {
      for (std::size_t f = 0; f < s.names.size(); ++f) {
        if (s.names[f] == n) return s.mean[f];
      }
      throw std::logic_error("no family " + n);
    };
    const double local = std::max({max_abs(family("C_XX")), max_abs(family("C_YY")), max_abs(family("C_ZZ"))});
    const double nonlocal = std::max({max_abs(family("C_H")), max_abs(family("C_Ht")), max_abs(family("C_V")),
                                      max_abs(family("C_Vt"))});
    const double plateau =
        std::max(min_abs_until(family("C_H"), s.t, 1.0 / 3.0), min_abs_until(family("C_V"), s.t, 1.0 / 3.0));
    bool regime_ok = false;
    if (r == 'a' || r == 'c') regime_ok = s.crossings_h == 2 || s.crossings_v == 2;
    if (r == 'b') regime_ok = s.crossings_h == 0 && s.crossings_v == 0 && plateau > 0.5;
    if (r == 'd') regime_ok = nonlocal < 0.1;
    regime_ok = regime_ok && local < 0.1;
    ok = ok && regime_ok;
    detail += std::string("(") + r + ")" + (regime_ok ? " ok" : " off") + " crossings H/V " +
              std::to_string(s.crossings_h) + "/" + std::to_string(s.crossings_v) + " plateau " +
              fmt("%.3f", plateau) + " max nonlocal " + fmt("%.3f", nonlocal) + " max local " + fmt("%.3f", local) +
              "; ";
  }
  return {ok, detail};
}

Outcome toric_4t() {
  const auto code = make_code(2, 2, Boundary::Periodic);
  const auto inst = ideal_instance_with_couplings(code, Regime::CNOT4T, 77);
  const PauliString z2 = code->logicals()[1].z;
  StateVector psi = InitialState{PauliLetter::X, -kPi / 4}.prepare(code->qubit_count());
  std::vector<double> v;
  for (int n = 0; n <= 100; ++n) {
    v.push_back(expectation(psi, z2).real());
    evolve_period(psi, inst);
  }
  double pattern_err = 0.0;
  for (int n = 0; n <= 100; ++n) {
    pattern_err = std::max(pattern_err, std::abs(std::abs(v[n]) - (n % 2 ? 1.0 : 0.0)));
    if (n + 2 <= 100) pattern_err = std::max(pattern_err, std::abs(v[n + 2] + v[n]));
    if (n + 4 <= 100) pattern_err = std::max(pattern_err, std::abs(v[n + 4] - v[n]));
  }
  const bool ideal_ok = pattern_err < 1e-9;

  auto run = [&](const char* preset) {
    auto c = preset_config(preset);
    c.workers = 4;
    const auto code7 = build_code(c.lattice);
    const auto s = stroboscopic_dynamics(ensemble(c, c.disorder), c.dynamics.initial,
                                         {resolve_observable(code7, "Zbar2")}, 60);
    return std::vector<double>(s[0].mean.begin() + 1, s[0].mean.end());
  };
  const auto t22 = run("fig7a");
  const auto t24 = run("fig7c");
  const auto o24 = run("fig7d");
  const double w22 = fourier_weight(t22, kPi / 2);
  const double w24 = fourier_weight(t24, kPi / 2);
  const auto p = fourier_power(o24);
  const std::size_t n = p.size();
  const std::size_t k4 = n / 4;
  double other = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    if (k != k4 && k != n - k4) other = std::max(other, p[k]);
  }
  const bool dominant = p[k4] > 3.0 * other;
  const bool ok = ideal_ok && w24 > w22 && !dominant;
  return {ok, "ideal pattern err " + fmt("%.1e", pattern_err) + "; weight at pi/2 toric 2x2 " + fmt("%.3f", w22) +
                  " vs 2x4 " + fmt("%.3f", w24) + "; open 2x4 peak " + fmt("%.3f", p[k4]) + " vs largest other " +
                  fmt("%.3f", other) + (dominant ? " (dominant)" : " (not dominant)")};
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double phase_slope(std::shared_ptr<const StabilizerCode> code, Regime regime, PhaseTarget target) {
  const auto ideal = ideal_instance_with_couplings(code, regime, 5);
  std::vector<double> ds, devs;
  for (int k = 0; k < 8; ++k) {
    const double d = 0.005 * kPi * std::pow(10.0, k / 7.0);
    auto inst = ideal;
    for (auto& h : inst.params.h_x) h += d;
    for (auto& h : inst.params.h_z) h += d;
    const auto r = relative_phase(inst, target);
    if (!r.defined) throw NumericalError("relative phase undefined");
    ds.push_back(d);
    devs.push_back(r.deviation);
  }
  return slope(ds, devs);
}

Outcome scaling() {
  bool ok = true;
  std::string detail;
  for (int ly : {2, 3, 4}) {
    const double s = phase_slope(make_code(2, ly, Boundary::Open), Regime::DTC2T, PhaseTarget::ZBar);
    ok = ok && std::abs(s - ly) <= 0.4;
    detail += "2x" + std::to_string(ly) + " slope " + fmt("%.3f", s) + "; ";
  }
  const double s2 = phase_slope(make_code(2, 4, Boundary::Periodic), Regime::CNOT4T, PhaseTarget::ZBar2);
  ok = ok && std::abs(s2 - 4.0) <= 0.4;
  return {ok, detail + "toric 2x4 Zbar2 slope " + fmt("%.3f", s2)};
}

Outcome appendix_b() {
  struct B {
    Backend backend;
    StabilizerType type;
    Site corner;
    LatticeSpec lattice;
  };
  const LatticeSpec s22(2, 2, Boundary::Open), s32(3, 2, Boundary::Open), s23(2, 3, Boundary::Open);
  const std::vector<B> chains = {
      {Backend::NativeTwoQubit, StabilizerType::SZ, {1, 1}, s22}, {Backend::NativeTwoQubit, StabilizerType::SX, {1, 1}, s22},
      {Backend::NativeTwoQubit, StabilizerType::SZ, {2, 1}, s32}, {Backend::NativeTwoQubit, StabilizerType::SX, {1, 2}, s23},
      {Backend::TrappedIon, StabilizerType::SX, {2, 1}, s32},     {Backend::TrappedIon, StabilizerType::SZ, {2, 1}, s32},
      {Backend::TrappedIon, StabilizerType::SX, {1, 1}, s22},     {Backend::TrappedIon, StabilizerType::SZ, {1, 1}, s22},
  };
  SplitMix64 rng(2718);
  double worst = 0.0;
  int symbolic_fail = 0, mutants = 0, mutants_caught = 0, disagreements = 0;
  for (const auto& b : chains) {
    const auto c = builtin_chain(b.backend, b.type, b.corner, b.lattice);
    if (!verify_symbolic(c).passed) ++symbolic_fail;
    for (int t = 0; t < 20; ++t) worst = std::max(worst, verify_numeric(c, rng.uniform() * kPi));
    for (std::size_t g = 0; g < c.chain.gates.size(); ++g) {
      if (!std::holds_alternative<PauliRotation>(c.chain.gates[g])) continue;
      auto m = c;
      auto& r = std::get<PauliRotation>(m.chain.gates[g]);
      r.theta = -r.theta;
      ++mutants;
      const bool sym = verify_symbolic(m).passed;
      const bool num = verify_numeric(m, 0.1 + rng.uniform() * (kPi - 0.2)) < 1e-10;
      if (!sym && !num) ++mutants_caught;
      if (sym != num) ++disagreements;
    }
  }
  const bool ok = symbolic_fail == 0 && worst < 1e-10 && mutants_caught == mutants && disagreements == 0;
  return {ok, std::to_string(chains.size()) + " chains, symbolic failures " + std::to_string(symbolic_fail) +
                  ", max numeric err " + fmt("%.1e", worst) + ", mutants caught " + std::to_string(mutants_caught) +
                  "/" + std::to_string(mutants)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const auto root = std::filesystem::temp_directory_path() / "fdtc_acceptance_determinism";
  std::filesystem::remove_all(root);
  auto dyn = preset_config("fig2b");
  dyn.realizations = 16;
  dyn.dynamics.periods = 20;
  auto sweep = preset_config("fig6c");
  sweep.kind = ExperimentKind::PhaseSweep;
  sweep.realizations = 8;
  sweep.sweep.hbar_over_pi = {0.05, 0.25, 0.45};
  auto corr = preset_config("fig5a");
  corr.lattice = LatticeSpec(2, 3, Boundary::Open);
  corr.realizations = 8;
  bool ok = true;
  std::string detail;
  for (auto* c : {&dyn, &sweep, &corr}) {
    std::string first;
    bool same = true;
    for (std::size_t w : {1, 2, 8}) {
      c->workers = w;
      c->output = root / (to_string(c->kind) + "_" + std::to_string(w));
      const auto r = run_experiment(*c);
      const std::string bytes = slurp(r.files.at("csv"));
      if (w == 1) {
        first = bytes;
      } else if (bytes != first) {
        same = false;
      }
    }
    ok = ok && same && !first.empty();
    detail += to_string(c->kind) + (same ? " identical" : " differs") + " (" + sha256_hex(first).substr(0, 12) + "); ";
  }
  std::filesystem::remove_all(root);
  return {ok, detail + "workers 1/2/8"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"code validity", code_validity},
      {"ideal-point exactness", ideal_point},
      {"stroboscopic subharmonic dynamics (3x3, 2x3 vs 2x4)", fig23},
      {"spectral functions and SG order at three hbar points", fig4},
      {"nonlocal correlator crossings", fig5},
      {"toric 4T dynamics and Fourier weight", toric_4t},
      {"relative-phase scaling law", scaling},
      {"stabilizer rotation synthesis chains", appendix_b},
      {"determinism across worker counts", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.passed) ++failed;
    std::printf("%s  %s: %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
