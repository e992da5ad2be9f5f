#include <algorithm>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fdtc/harness.hpp"

namespace fdtc {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw std::invalid_argument(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw std::invalid_argument(where + ": unknown key '" + key + "'");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw std::invalid_argument(where + ": missing key '" + key + "'");
  return obj.at(key);
}

std::uint64_t as_u64(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  throw std::invalid_argument(where + ": expected a non-negative integer");
}

std::size_t as_count(const json& j, const std::string& where) {
  return static_cast<std::size_t>(as_u64(j, where));
}

double as_real(const json& j, const std::string& where) {
  if (!j.is_number()) throw std::invalid_argument(where + ": expected a number");
  return j.get<double>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw std::invalid_argument(where + ": expected a string");
  return j.get<std::string>();
}

FamilyDisorder parse_family(const json& j, const std::string& where) {
  check_keys(j, {"mean", "halfwidth"}, where);
  FamilyDisorder f;
  try {
    f.mean = json_angle(require(j, "mean", where));
    f.halfwidth = j.contains("halfwidth") ? json_angle(j.at("halfwidth")) : 0.0;
  } catch (const json::exception& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
  return f;
}

json family_json(const FamilyDisorder& f) { return {{"mean", f.mean}, {"halfwidth", f.halfwidth}}; }

bool needs_model(ExperimentKind k) {
  return k == ExperimentKind::Dynamics || k == ExperimentKind::Spectral || k == ExperimentKind::SGOrder ||
         k == ExperimentKind::Correlators || k == ExperimentKind::PhaseSweep;
}

bool is_sweep(ExperimentKind k) {
  return k == ExperimentKind::Spectral || k == ExperimentKind::SGOrder || k == ExperimentKind::PhaseSweep;
}

}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::DescribeCode: return "describe-code";
    case ExperimentKind::Dynamics: return "dynamics";
    case ExperimentKind::Spectral: return "spectral";
    case ExperimentKind::SGOrder: return "sg-order";
    case ExperimentKind::Correlators: return "correlators";
    case ExperimentKind::PhaseSweep: return "phase-sweep";
    case ExperimentKind::SynthVerify: return "synth-verify";
  }
  return "?";
}

ExperimentKind experiment_from_string(const std::string& text) {
  for (auto k : {ExperimentKind::DescribeCode, ExperimentKind::Dynamics, ExperimentKind::Spectral,
                 ExperimentKind::SGOrder, ExperimentKind::Correlators, ExperimentKind::PhaseSweep,
                 ExperimentKind::SynthVerify}) {
    if (to_string(k) == text) return k;
  }
  throw std::invalid_argument("unknown experiment '" + text + "'");
}

BuiltinSpec parse_builtin_spec(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw std::invalid_argument("builtin '" + text + "': expected backend:type:i,j");
  BuiltinSpec spec;
  spec.backend = backend_from_string(text.substr(0, a));
  spec.type = stabilizer_type_from_string(text.substr(a + 1, b - a - 1));
  std::istringstream in(text.substr(b + 1));
  char comma = 0;
  if (!(in >> spec.corner.i >> comma >> spec.corner.j) || comma != ',' || !(in >> std::ws).eof() ||
      spec.corner.i < 1 || spec.corner.j < 1) {
    throw std::invalid_argument("builtin '" + text + "': corner must be i,j with i, j >= 1");
  }
  return spec;
}

double json_angle(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_angle(j.get<std::string>());
  throw std::invalid_argument("angle must be a number or a string such as \"0.45pi\"");
}

DisorderSpec sweep_disorder(const DisorderSpec& base, Regime regime, double hbar_over_pi) {
  const double h = hbar_over_pi * kPi;
  DisorderSpec d = base;
  d.h_x_row1.mean = h;
  d.h_x_bulk.mean = h + kPi / 2;
  if (regime == Regime::DTC2T) {
    d.h_z_col1.mean = h;
    d.h_z_bulk.mean = h + kPi / 2;
  } else {
    d.h_z_col1.mean = h / 2;
    d.h_z_bulk.mean = h / 2;
  }
  d.h_z_corner.reset();
  return d;
}

NamedObservable resolve_observable(const StabilizerCode& code, const std::string& name) {
  const auto& logicals = code.logicals();
  auto logical = [&](std::size_t k, bool z) -> NamedObservable {
    if (k >= logicals.size()) {
      if (k == 1 && z) return {name, row_operator(code.lattice(), PauliLetter::X, 1)};
      throw std::invalid_argument("observable '" + name + "' needs a second logical qubit");
    }
    return {name, z ? logicals[k].z : logicals[k].x};
  };
  if (name == "Zbar" || name == "Zbar1") return logical(0, true);
  if (name == "Xbar" || name == "Xbar1") return logical(0, false);
  if (name == "Zbar2") return logical(1, true);
  if (name == "Xbar2") return logical(1, false);
  return {name, parse_pauli(name, code.lattice())};
}

void ExperimentConfig::validate() const {
  if (workers == 0) throw std::invalid_argument("workers must be at least 1");
  if (output.empty()) throw std::invalid_argument("output path is empty");
  if (kind == ExperimentKind::SynthVerify) {
    if (synth.builtin.empty() == synth.circuit.empty()) {
      throw std::invalid_argument("synth: give exactly one of 'builtin' or 'circuit'");
    }
    if (synth.trials == 0) throw std::invalid_argument("synth.trials must be at least 1");
    if (synth.max_patch == 0) throw std::invalid_argument("synth.max_patch must be at least 1");
    return;
  }
  check_qubit_cap(lattice.qubit_count());
  const StabilizerCode code = build_code(lattice);
  if (kind == ExperimentKind::DescribeCode) return;
  disorder.validate();
  if (realizations == 0) throw std::invalid_argument("ensemble.realizations must be at least 1");
  if (kind == ExperimentKind::Dynamics) {
    if (dynamics.periods == 0) throw std::invalid_argument("dynamics.periods must be at least 1");
    if (dynamics.observables.empty()) throw std::invalid_argument("dynamics.observables is empty");
    std::set<std::string> seen;
    for (const auto& o : dynamics.observables) {
      if (!seen.insert(o).second) throw std::invalid_argument("duplicate observable '" + o + "'");
      const auto r = resolve_observable(code, o);
      if (r.op.is_identity()) throw std::invalid_argument("observable '" + o + "' is the identity");
    }
    if (dynamics.initial.letter == PauliLetter::I) throw std::invalid_argument("initial_state letter must be X, Y or Z");
  }
  if (is_sweep(kind)) {
    if (kind == ExperimentKind::PhaseSweep && sweep.hbar_over_pi.empty()) {
      throw std::invalid_argument("sweep.hbar_over_pi is empty");
    }
    sweep.spectral.validate();
    if (!(sweep.threshold > 0.0 && sweep.threshold <= 1.0)) {
      throw std::invalid_argument("sweep.threshold must lie in (0, 1]");
    }
  }
  if (kind == ExperimentKind::Correlators) {
    if (correlators.points < 2) throw std::invalid_argument("correlators.points must be at least 2");
    if (!(correlators.floor >= 0.0)) throw std::invalid_argument("correlators.floor must be non-negative");
  }
}

json ExperimentConfig::to_json(bool with_runtime) const {
  json j;
  j["experiment"] = to_string(kind);
  if (kind == ExperimentKind::SynthVerify) {
    json s{{"backend", to_string(synth.backend)}, {"trials", synth.trials}, {"seed", synth.seed},
           {"max_patch", synth.max_patch}};
    if (!synth.builtin.empty()) s["builtin"] = synth.builtin;
    if (!synth.circuit.empty()) s["circuit"] = synth.circuit;
    j["synth"] = s;
  }
  j["lattice"] = {{"lx", lattice.lx()}, {"ly", lattice.ly()}, {"boundary", to_string(lattice.boundary())}};
  if (needs_model(kind)) {
    json drive{{"h_x_row1", family_json(disorder.h_x_row1)},
               {"h_x_bulk", family_json(disorder.h_x_bulk)},
               {"h_z_col1", family_json(disorder.h_z_col1)},
               {"h_z_bulk", family_json(disorder.h_z_bulk)}};
    if (disorder.h_z_corner) drive["h_z_corner"] = family_json(*disorder.h_z_corner);
    j["drive"] = drive;
    j["couplings"] = {{"j_bulk", family_json(disorder.j_bulk)},
                      {"j_boundary_x", family_json(disorder.j_boundary_x)},
                      {"j_boundary_z", family_json(disorder.j_boundary_z)}};
    j["ensemble"] = {{"realizations", realizations}, {"seed", seed}};
    j["regime"] = to_string(regime);
  }
  if (kind == ExperimentKind::Dynamics) {
    j["dynamics"] = {{"periods", dynamics.periods},
                     {"observables", dynamics.observables},
                     {"initial_state",
                      {{"letter", std::string(1, to_char(dynamics.initial.letter))}, {"theta", dynamics.initial.theta}}}};
  }
  if (is_sweep(kind)) {
    j["sweep"] = {{"hbar_over_pi", sweep.hbar_over_pi},
                  {"half_width", sweep.spectral.half_width},
                  {"sample_size", sweep.spectral.sample_size},
                  {"threshold", sweep.threshold}};
  }
  if (kind == ExperimentKind::Correlators) {
    j["correlators"] = {{"points", correlators.points}, {"floor", correlators.floor}};
  }
  if (with_runtime) {
    j["output"] = output.string();
    j["workers"] = workers;
  }
  return j;
}

ExperimentConfig parse_config(const json& j) {
  check_keys(j, {"experiment", "lattice", "drive", "couplings", "ensemble", "regime", "dynamics", "sweep",
                 "correlators", "synth", "output", "workers"},
             "config");
  ExperimentConfig c;
  try {
    c.kind = experiment_from_string(as_string(require(j, "experiment", "config"), "experiment"));

    if (j.contains("lattice")) {
      const auto& l = j.at("lattice");
      check_keys(l, {"lx", "ly", "boundary"}, "lattice");
      const auto lx = as_count(require(l, "lx", "lattice"), "lattice.lx");
      const auto ly = as_count(require(l, "ly", "lattice"), "lattice.ly");
      const Boundary b = l.contains("boundary") ? boundary_from_string(as_string(l.at("boundary"), "lattice.boundary"))
                                                : Boundary::Open;
      if (lx > 64 || ly > 64) throw std::invalid_argument("lattice dimensions out of range");
      c.lattice = LatticeSpec(static_cast<int>(lx), static_cast<int>(ly), b);
    } else if (c.kind != ExperimentKind::SynthVerify) {
      throw std::invalid_argument("config: missing key 'lattice'");
    }

    if (needs_model(c.kind)) {
      const auto& d = require(j, "drive", "config");
      check_keys(d, {"h_x_row1", "h_x_bulk", "h_z_col1", "h_z_bulk", "h_z_corner"}, "drive");
      c.disorder.h_x_row1 = parse_family(require(d, "h_x_row1", "drive"), "drive.h_x_row1");
      c.disorder.h_x_bulk = parse_family(require(d, "h_x_bulk", "drive"), "drive.h_x_bulk");
      c.disorder.h_z_col1 = parse_family(require(d, "h_z_col1", "drive"), "drive.h_z_col1");
      c.disorder.h_z_bulk = parse_family(require(d, "h_z_bulk", "drive"), "drive.h_z_bulk");
      if (d.contains("h_z_corner")) c.disorder.h_z_corner = parse_family(d.at("h_z_corner"), "drive.h_z_corner");

      const auto& k = require(j, "couplings", "config");
      check_keys(k, {"j_bulk", "j_boundary_x", "j_boundary_z"}, "couplings");
      c.disorder.j_bulk = parse_family(require(k, "j_bulk", "couplings"), "couplings.j_bulk");
      const bool open = !c.lattice.periodic();
      auto boundary = [&](const char* key) {
        if (k.contains(key)) return parse_family(k.at(key), std::string("couplings.") + key);
        if (open) throw std::invalid_argument(std::string("couplings: missing key '") + key + "'");
        return c.disorder.j_bulk;
      };
      c.disorder.j_boundary_x = boundary("j_boundary_x");
      c.disorder.j_boundary_z = boundary("j_boundary_z");

      const auto& e = require(j, "ensemble", "config");
      check_keys(e, {"realizations", "seed"}, "ensemble");
      c.realizations = as_count(require(e, "realizations", "ensemble"), "ensemble.realizations");
      c.seed = e.contains("seed") ? as_u64(e.at("seed"), "ensemble.seed") : 0;
      if (j.contains("regime")) c.regime = regime_from_string(as_string(j.at("regime"), "regime"));
    } else {
      for (const char* key : {"drive", "couplings", "ensemble", "regime"}) {
        if (j.contains(key)) {
          throw std::invalid_argument(std::string("config: key '") + key + "' does not apply to " + to_string(c.kind));
        }
      }
    }

    if (j.contains("dynamics")) {
      const auto& d = j.at("dynamics");
      check_keys(d, {"periods", "observables", "initial_state"}, "dynamics");
      if (d.contains("periods")) c.dynamics.periods = as_count(d.at("periods"), "dynamics.periods");
      if (d.contains("observables")) {
        const auto& o = d.at("observables");
        if (!o.is_array()) throw std::invalid_argument("dynamics.observables: expected an array");
        c.dynamics.observables.clear();
        for (const auto& v : o) c.dynamics.observables.push_back(as_string(v, "dynamics.observables"));
      }
      if (d.contains("initial_state")) {
        const auto& s = d.at("initial_state");
        check_keys(s, {"letter", "theta"}, "dynamics.initial_state");
        const std::string letter = as_string(require(s, "letter", "dynamics.initial_state"), "initial_state.letter");
        if (letter.size() != 1) throw std::invalid_argument("initial_state.letter must be X, Y or Z");
        c.dynamics.initial.letter = letter_from_char(letter[0]);
        c.dynamics.initial.theta = json_angle(require(s, "theta", "dynamics.initial_state"));
      }
    }

    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      check_keys(s, {"hbar_over_pi", "half_width", "sample_size", "threshold"}, "sweep");
      if (s.contains("hbar_over_pi")) {
        const auto& g = s.at("hbar_over_pi");
        if (!g.is_array()) throw std::invalid_argument("sweep.hbar_over_pi: expected an array");
        for (const auto& v : g) c.sweep.hbar_over_pi.push_back(as_real(v, "sweep.hbar_over_pi"));
      }
      if (s.contains("half_width")) c.sweep.spectral.half_width = json_angle(s.at("half_width"));
      if (s.contains("sample_size")) c.sweep.spectral.sample_size = as_count(s.at("sample_size"), "sweep.sample_size");
      if (s.contains("threshold")) c.sweep.threshold = as_real(s.at("threshold"), "sweep.threshold");
    }

    if (j.contains("correlators")) {
      const auto& s = j.at("correlators");
      check_keys(s, {"points", "floor"}, "correlators");
      if (s.contains("points")) c.correlators.points = as_count(s.at("points"), "correlators.points");
      if (s.contains("floor")) c.correlators.floor = as_real(s.at("floor"), "correlators.floor");
    }

    if (j.contains("synth")) {
      const auto& s = j.at("synth");
      check_keys(s, {"builtin", "circuit", "backend", "trials", "seed", "max_patch"}, "synth");
      if (s.contains("builtin")) c.synth.builtin = as_string(s.at("builtin"), "synth.builtin");
      if (s.contains("circuit")) c.synth.circuit = as_string(s.at("circuit"), "synth.circuit");
      if (s.contains("backend")) c.synth.backend = backend_from_string(as_string(s.at("backend"), "synth.backend"));
      if (s.contains("trials")) c.synth.trials = as_count(s.at("trials"), "synth.trials");
      if (s.contains("seed")) c.synth.seed = as_u64(s.at("seed"), "synth.seed");
      if (s.contains("max_patch")) c.synth.max_patch = as_count(s.at("max_patch"), "synth.max_patch");
    }

    if (c.kind == ExperimentKind::SynthVerify && !j.contains("lattice")) {
      if (c.synth.builtin.empty()) throw std::invalid_argument("synth: a circuit file needs a 'lattice' section");
      const Site s = parse_builtin_spec(c.synth.builtin).corner;
      c.lattice = LatticeSpec(std::max(2, s.i + 1), std::max(2, s.j + 1), Boundary::Open);
    }

    if (j.contains("output")) c.output = as_string(j.at("output"), "output");
    if (j.contains("workers")) c.workers = as_count(j.at("workers"), "workers");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config '" + path.string() + "': " + e.what());
  }
  return parse_config(j);
}

}  // namespace fdtc
