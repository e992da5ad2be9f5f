#include <numbers>
#include <stdexcept>

#include "fdtc/harness.hpp"

namespace fdtc {

namespace {

constexpr double kPi = std::numbers::pi;

FamilyDisorder fam(double mean_over_pi, double halfwidth_over_pi) {
  return {mean_over_pi * kPi, halfwidth_over_pi * kPi};
}

FamilyDisorder coupling(double mean, double halfwidth) { return {mean, halfwidth}; }

DisorderSpec couplings(DisorderSpec d, double mean, double halfwidth) {
  d.j_bulk = coupling(mean, halfwidth);
  d.j_boundary_x = coupling(mean, halfwidth);
  d.j_boundary_z = coupling(mean, halfwidth);
  return d;
}

DisorderSpec dtc_drive() {
  DisorderSpec d;
  d.h_x_row1 = fam(0.45, 0.005);
  d.h_x_bulk = fam(0.95, 0.005);
  d.h_z_col1 = fam(0.45, 0.005);
  d.h_z_bulk = fam(0.95, 0.005);
  return couplings(d, 0.3, 0.5);
}

DisorderSpec correlator_drive(char regime) {
  const double dh = 0.0125 / 2;
  const double a = 0.475;
  const double b = 0.025;
  DisorderSpec d;
  switch (regime) {
    case 'a':
      d.h_x_row1 = fam(a, dh);
      d.h_x_bulk = fam(b, dh);
      d.h_z_col1 = fam(a, dh);
      d.h_z_bulk = fam(b, dh);
      break;
    case 'b':
      d.h_x_row1 = fam(b, dh);
      d.h_x_bulk = fam(a, dh);
      d.h_z_col1 = fam(b, dh);
      d.h_z_bulk = fam(a, dh);
      break;
    case 'c':
      d.h_x_row1 = fam(a, dh);
      d.h_x_bulk = fam(b, dh);
      d.h_z_col1 = fam(a, dh);
      d.h_z_bulk = fam(b, dh);
      d.h_z_corner = fam(b, dh);
      break;
    default:
      d.h_x_row1 = fam(0.225, dh);
      d.h_x_bulk = fam(0.225, dh);
      d.h_z_col1 = fam(0.225, dh);
      d.h_z_bulk = fam(0.225, dh);
      break;
  }
  return couplings(d, 0.5, 0.5);
}

DisorderSpec cnot_drive() {
  DisorderSpec d;
  d.h_x_row1 = fam(0.475, 0.0125);
  d.h_x_bulk = fam(0.975, 0.0125);
  d.h_z_col1 = fam(0.2375, 0.0125);
  d.h_z_bulk = fam(0.2375, 0.0125);
  return couplings(d, 0.5, 0.5);
}

std::vector<double> hbar_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 19; ++k) g.push_back(0.025 * k);
  return g;
}

ExperimentConfig base(ExperimentKind kind, int lx, int ly, Boundary b, std::size_t realizations,
                      const DisorderSpec& d, const std::string& name) {
  ExperimentConfig c;
  c.kind = kind;
  c.lattice = LatticeSpec(lx, ly, b);
  c.disorder = d;
  c.realizations = realizations;
  c.seed = 20240601;
  c.output = "fdtc_out/" + name;
  return c;
}

ExperimentConfig dynamics(const std::string& name, int lx, int ly, Boundary b, std::size_t realizations,
                          const DisorderSpec& d, InitialState init, std::vector<std::string> obs,
                          std::size_t periods) {
  ExperimentConfig c = base(ExperimentKind::Dynamics, lx, ly, b, realizations, d, name);
  c.dynamics.initial = init;
  c.dynamics.observables = std::move(obs);
  c.dynamics.periods = periods;
  return c;
}

ExperimentConfig sweep(const std::string& name, ExperimentKind kind, int lx, int ly, Boundary b) {
  ExperimentConfig c = base(kind, lx, ly, b, 5, dtc_drive(), name);
  c.sweep.hbar_over_pi = hbar_grid();
  return c;
}

ExperimentConfig correlators(const std::string& name, char regime) {
  return base(ExperimentKind::Correlators, 3, 3, Boundary::Open, 10, correlator_drive(regime), name);
}

ExperimentConfig cnot(const std::string& name, int lx, int ly, Boundary b) {
  ExperimentConfig c = dynamics(name, lx, ly, b, 100, cnot_drive(), {PauliLetter::X, -kPi / 4}, {"Zbar2"}, 60);
  c.regime = Regime::CNOT4T;
  return c;
}

}  // namespace

std::vector<Preset> list_presets() {
  const InitialState tilted{PauliLetter::Y, kPi / 8};
  const InitialState rotated_x{PauliLetter::X, -kPi / 4};
  const Boundary open = Boundary::Open;
  const Boundary torus = Boundary::Periodic;
  const std::vector<std::string> zx{"Zbar", "Xbar"};
  std::vector<Preset> p = {
      {"fig2a", "Zbar dynamics, surface 2x2", dynamics("fig2a", 2, 2, open, 100, dtc_drive(), tilted, zx, 50)},
      {"fig2b", "Zbar dynamics, surface 3x3", dynamics("fig2b", 3, 3, open, 100, dtc_drive(), tilted, zx, 50)},
      {"fig2c", "Xbar dynamics, surface 2x2", dynamics("fig2c", 2, 2, open, 100, dtc_drive(), tilted, zx, 50)},
      {"fig2d", "Xbar dynamics, surface 3x3", dynamics("fig2d", 3, 3, open, 100, dtc_drive(), tilted, zx, 50)},
      {"fig3a", "Zbar dynamics, surface 2x3", dynamics("fig3a", 2, 3, open, 100, dtc_drive(), tilted, zx, 50)},
      {"fig3b", "Zbar dynamics, surface 2x4", dynamics("fig3b", 2, 4, open, 100, dtc_drive(), tilted, zx, 50)},
      {"fig3c", "Xbar dynamics, surface 2x3", dynamics("fig3c", 2, 3, open, 100, dtc_drive(), tilted, zx, 50)},
      {"fig3d", "Xbar dynamics, surface 2x4", dynamics("fig3d", 2, 4, open, 100, dtc_drive(), tilted, zx, 50)},
      {"fig4a", "spectral functions vs hbar, surface 3x3", sweep("fig4a", ExperimentKind::Spectral, 3, 3, open)},
      {"fig4b", "SG order parameters vs hbar, surface 3x3", sweep("fig4b", ExperimentKind::SGOrder, 3, 3, open)},
      {"fig5a", "nonlocal correlators, DTC regime, surface 3x3", correlators("fig5a", 'a')},
      {"fig5b", "nonlocal correlators, surface-code regime, surface 3x3", correlators("fig5b", 'b')},
      {"fig5c", "nonlocal correlators, DTC regime with shifted z column, surface 3x3", correlators("fig5c", 'c')},
      {"fig5d", "nonlocal correlators, trivial regime, surface 3x3", correlators("fig5d", 'd')},
      {"fig6a", "Zbar dynamics, toric 2x2", dynamics("fig6a", 2, 2, torus, 100, dtc_drive(), rotated_x, zx, 50)},
      {"fig6b", "Xbar dynamics, toric 2x2", dynamics("fig6b", 2, 2, torus, 100, dtc_drive(), rotated_x, zx, 50)},
      {"fig6c", "spectral functions vs hbar, toric 2x2", sweep("fig6c", ExperimentKind::Spectral, 2, 2, torus)},
      {"fig6d", "SG order parameters vs hbar, toric 2x4", sweep("fig6d", ExperimentKind::SGOrder, 2, 4, torus)},
      {"fig7a", "Zbar2 dynamics, CNOT regime, toric 2x2", cnot("fig7a", 2, 2, torus)},
      {"fig7b", "Zbar2 dynamics, CNOT regime, toric 4x2", cnot("fig7b", 4, 2, torus)},
      {"fig7c", "Zbar2 dynamics, CNOT regime, toric 2x4", cnot("fig7c", 2, 4, torus)},
      {"fig7d", "Zbar2 dynamics, CNOT regime, surface 2x4", cnot("fig7d", 2, 4, open)},
  };
  return p;
}

ExperimentConfig preset_config(const std::string& name) {
  for (auto& p : list_presets()) {
    if (p.name == name) return p.config;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace fdtc
