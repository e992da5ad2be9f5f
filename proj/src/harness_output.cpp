#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fdtc/harness.hpp"

namespace fdtc {

namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) line += ',';
    line += quote(cells[k]);
  }
  return line;
}

std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cell += '"';
        ++k;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV record");
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string CsvTable::render() const {
  std::string out;
  for (const auto& h : header_lines) out += "# " + h + "\n";
  out += join(columns) + "\n";
  for (const auto& r : rows) out += join(r) + "\n";
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (have_columns) throw std::invalid_argument("comment line after the CSV header");
      t.header_lines.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2) : line.substr(1));
      continue;
    }
    auto cells = split_record(line);
    if (!have_columns) {
      t.columns = std::move(cells);
      have_columns = true;
    } else {
      if (cells.size() != t.columns.size()) throw std::invalid_argument("CSV row width does not match header");
      t.rows.push_back(std::move(cells));
    }
  }
  if (!have_columns) throw std::invalid_argument("CSV has no header row");
  return t;
}

std::vector<std::string> config_echo(const ExperimentConfig& config) {
  return {std::string("fdtc ") + kToolVersion, "experiment " + to_string(config.kind),
          "seed " + std::to_string(config.kind == ExperimentKind::SynthVerify ? config.synth.seed : config.seed),
          "config " + config.to_json(false).dump()};
}

CsvTable dynamics_table(const ExperimentConfig& config, const std::vector<DiagnosticSeries>& series) {
  CsvTable t{config_echo(config), {"period", "observable", "mean", "stderr"}, {}};
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.grid.size(); ++k) {
      t.rows.push_back({std::to_string(static_cast<long long>(s.grid[k])), s.observable, format_number(s.mean[k]),
                        format_number(s.sem[k])});
    }
  }
  return t;
}

CsvTable correlator_table(const ExperimentConfig& config, const CorrelatorSeries& series) {
  CsvTable t{config_echo(config), {"t_over_T", "correlator", "value"}, {}};
  for (std::size_t f = 0; f < series.names.size(); ++f) {
    for (std::size_t k = 0; k < series.t.size(); ++k) {
      t.rows.push_back({format_number(series.t[k]), series.names[f], format_number(series.mean[f][k])});
    }
  }
  return t;
}

CsvTable sweep_table(const ExperimentConfig& config, const std::vector<SweepPoint>& points) {
  CsvTable t{config_echo(config), {"hbar_over_pi", "metric", "value"}, {}};
  const bool spectral = config.kind != ExperimentKind::SGOrder;
  const bool sg = config.kind != ExperimentKind::Spectral;
  for (const auto& p : points) {
    const std::string h = format_number(p.hbar_over_pi);
    auto emit = [&](const std::vector<ScalarDiagnostic>& list) {
      for (const auto& d : list) {
        t.rows.push_back({h, d.name, format_number(d.mean)});
        t.rows.push_back({h, d.name + "_sem", format_number(d.sem)});
      }
    };
    if (spectral) emit(p.metrics.spectral);
    if (sg) emit(p.metrics.sg);
    if (config.kind == ExperimentKind::PhaseSweep) {
      t.rows.push_back({h, "phase:" + to_string(p.metrics.phase), "1"});
    }
  }
  return t;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw std::runtime_error("EVP_MD_CTX_new failed");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, md, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("SHA-256 digest failed");
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += kHex[md[k] >> 4];
    out += kHex[md[k] & 15];
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace fdtc
