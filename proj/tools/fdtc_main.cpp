#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fdtc/harness.hpp"

namespace {

using namespace fdtc;

struct CommonFlags {
  std::string config;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON experiment config");
  cmd->add_option("--preset", f.preset, "named preset (see `fdtc presets`)");
  cmd->add_option("--seed", f.seed, "override the ensemble seed");
  cmd->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "output directory");
}

bool sweep_kind(ExperimentKind k) {
  return k == ExperimentKind::Spectral || k == ExperimentKind::SGOrder || k == ExperimentKind::PhaseSweep;
}

ExperimentConfig resolve(const CommonFlags& f, ExperimentKind kind) {
  if (f.config.empty() == f.preset.empty()) throw std::invalid_argument("give exactly one of --config or --preset");
  ExperimentConfig c = f.config.empty() ? preset_config(f.preset) : load_config(f.config);
  if (c.kind != kind) {
    if (!(sweep_kind(c.kind) && sweep_kind(kind))) {
      throw std::invalid_argument("config describes a '" + to_string(c.kind) + "' experiment, not '" +
                                  to_string(kind) + "'");
    }
    c.kind = kind;
    if (kind == ExperimentKind::PhaseSweep && c.sweep.hbar_over_pi.empty()) {
      throw std::invalid_argument("phase-sweep needs sweep.hbar_over_pi");
    }
  }
  if (f.seed) (kind == ExperimentKind::SynthVerify ? c.synth.seed : c.seed) = *f.seed;
  if (f.workers) c.workers = *f.workers;
  if (!f.out.empty()) c.output = f.out;
  c.validate();
  return c;
}

int report(const RunResult& r) {
  std::cout << r.summary.dump(2) << "\n";
  for (const auto& [role, path] : r.files) std::cerr << role << ": " << path.string() << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodically driven surface and toric code simulator"};
  app.require_subcommand(1);

  int lx = 3;
  int ly = 3;
  std::string boundary = "open";
  std::string describe_config;
  auto* describe = app.add_subcommand("describe-code", "print generators, logicals and validation");
  describe->add_option("--lx", lx, "rows")->check(CLI::Range(1, 64));
  describe->add_option("--ly", ly, "columns")->check(CLI::Range(1, 64));
  describe->add_option("--boundary", boundary, "open or periodic");
  describe->add_option("--config", describe_config, "take the lattice from a config file");

  struct Sub {
    ExperimentKind kind;
    const char* help;
    CLI::App* cmd = nullptr;
    CommonFlags flags;
  };
  Sub subs[] = {
      {ExperimentKind::Dynamics, "stroboscopic logical dynamics", nullptr, {}},
      {ExperimentKind::Spectral, "spectral functions (optionally swept over hbar)", nullptr, {}},
      {ExperimentKind::SGOrder, "spin-glass order parameters (optionally swept over hbar)", nullptr, {}},
      {ExperimentKind::Correlators, "nonlocal correlators over one period", nullptr, {}},
      {ExperimentKind::PhaseSweep, "spectral + SG sweep with phase labels", nullptr, {}},
  };
  for (auto& s : subs) {
    s.cmd = app.add_subcommand(to_string(s.kind), s.help);
    add_common(s.cmd, s.flags);
  }

  CommonFlags synth_flags;
  std::string circuit;
  std::string builtin;
  std::string backend = "native";
  auto* synth = app.add_subcommand("synth-verify", "verify a stabilizer-rotation synthesis chain");
  add_common(synth, synth_flags);
  synth->add_option("circuit", circuit, "circuit text file");
  synth->add_option("--builtin", builtin, "built-in chain backend:type:i,j, e.g. native:SZ:1,1");
  synth->add_option("--backend", backend, "backend for a circuit file (native or trapped-ion)");
  synth->add_option("--lx", lx, "rows for a circuit file")->check(CLI::Range(1, 64));
  synth->add_option("--ly", ly, "columns for a circuit file")->check(CLI::Range(1, 64));

  std::string show;
  auto* presets = app.add_subcommand("presets", "list presets or print one as JSON");
  presets->add_option("--preset", show, "preset to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*describe) {
      const LatticeSpec lat = describe_config.empty() ? LatticeSpec(lx, ly, boundary_from_string(boundary))
                                                      : load_config(describe_config).lattice;
      const StabilizerCode code = build_code(lat);
      const ValidationReport v = validate_code(code);
      std::cout << describe_code(code) << v.summary() << "\n";
      return v.passed ? 0 : 1;
    }
    if (*presets) {
      if (!show.empty()) {
        std::cout << preset_config(show).to_json(true).dump(2) << "\n";
        return 0;
      }
      for (const auto& p : list_presets()) std::cout << p.name << "\t" << p.description << "\n";
      return 0;
    }
    for (auto& s : subs) {
      if (*s.cmd) return report(run_experiment(resolve(s.flags, s.kind)));
    }
    if (*synth) {
      ExperimentConfig c;
      if (!synth_flags.config.empty() || !synth_flags.preset.empty()) {
        c = resolve(synth_flags, ExperimentKind::SynthVerify);
      } else {
        if (circuit.empty() == builtin.empty()) throw std::invalid_argument("give a circuit file or --builtin");
        c.kind = ExperimentKind::SynthVerify;
        c.synth.builtin = builtin;
        c.synth.circuit = circuit;
        c.synth.backend = backend_from_string(backend);
        if (!builtin.empty()) {
          const Site s = parse_builtin_spec(builtin).corner;
          c.lattice = LatticeSpec(std::max(2, s.i + 1), std::max(2, s.j + 1), Boundary::Open);
        } else {
          c.lattice = LatticeSpec(lx, ly, Boundary::Open);
        }
        c.output = "fdtc_out/synth";
        if (synth_flags.seed) c.synth.seed = *synth_flags.seed;
        if (synth_flags.workers) c.workers = *synth_flags.workers;
        if (!synth_flags.out.empty()) c.output = synth_flags.out;
        c.validate();
      }
      return report(run_experiment(c));
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
