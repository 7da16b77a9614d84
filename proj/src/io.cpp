#include "psigrad/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "psigrad/flows.hpp"
#include "psigrad/picard.hpp"

namespace psigrad {

const char* const kToolVersion = "0.1.0";

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("CsvTable: empty header");
}

void CsvTable::add_row(const std::vector<double>& row) {
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double v : row) cells.push_back(format_float(v));
  add_row_raw(cells);
}

void CsvTable::add_row_raw(const std::vector<std::string>& row) {
  if (row.size() != header_.size()) {
    throw std::invalid_argument("CsvTable: row width mismatch");
  }
  rows_.push_back(row);
}

std::string CsvTable::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    out += header_[i];
    out += (i + 1 < header_.size()) ? "," : "\n";
  }
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out += (i + 1 < row.size()) ? "," : "\n";
    }
  }
  return out;
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("CsvTable: cannot open " + path);
  out << to_string();
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::vector<std::string> header = {"t"};
  for (int j = 0; j < traj.dim(); ++j) header.push_back("x_" + std::to_string(j));
  CsvTable table(std::move(header));
  for (int i = 0; i < traj.grid.size(); ++i) {
    std::vector<double> row = {traj.grid[i]};
    for (int j = 0; j < traj.dim(); ++j) row.push_back(traj.states(j, i));
    table.add_row(row);
  }
  table.write(path);
}

void write_bound_report_csv(const BoundReport& report, const std::string& path) {
  CsvTable table({"t", "observed", "bound", "violated"});
  std::size_t v = 0;
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    const bool hit =
        v < report.violated_at.size() && report.violated_at[v] == report.times[i];
    if (hit) ++v;
    table.add_row_raw({format_float(report.times[i]), format_float(report.observed[i]),
                       format_float(report.bound[i]), hit ? "1" : "0"});
  }
  table.write(path);
}

void write_frac_polynomial_csv(const FracPolynomial& poly, const std::string& path) {
  CsvTable table({"exponent", "coefficient"});
  for (const auto& term : poly.terms()) {
    table.add_row({term.exponent, term.coefficient});
  }
  table.write(path);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["tool_version"] = tool_version;
  j["timestamp"] = timestamp;
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("RunManifest: cannot open " + path);
  out << to_json();
}

RunManifest make_manifest(const std::string& command, const std::string& canonical_config,
                          std::vector<std::string> outputs) {
  RunManifest m;
  m.command = command;
  m.config_hash = fnv1a_hex(canonical_config);
  m.tool_version = kToolVersion;
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  m.timestamp = buf;
  m.outputs = std::move(outputs);
  return m;
}

}  // namespace psigrad
