#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "psigrad/abm.hpp"

namespace psigrad {

/// Fixed %.12e rendering so repeated runs emit byte-identical files.
std::string format_float(double v);

/// Rectangular CSV with a fixed float format. Column count is set by the
/// header; rows must match.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& row);
  void add_row_raw(const std::vector<std::string>& row);
  std::string to_string() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Trajectory CSV with header t,x_0,...,x_{d-1}.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

struct BoundReport;
class FracPolynomial;

/// Bound-report CSV with header t,observed,bound,violated (violated is 0/1).
void write_bound_report_csv(const BoundReport& report, const std::string& path);

/// Polynomial CSV with header exponent,coefficient.
void write_frac_polynomial_csv(const FracPolynomial& poly, const std::string& path);

/// 64-bit FNV-1a, rendered as 16 hex digits; used for config hashes.
std::string fnv1a_hex(const std::string& bytes);

struct RunManifest {
  std::string command;
  std::string config_hash;
  std::string tool_version;
  std::string timestamp;  // ISO-8601 UTC
  std::vector<std::string> outputs;

  std::string to_json() const;
  void write(const std::string& path) const;
};

RunManifest make_manifest(const std::string& command, const std::string& canonical_config,
                          std::vector<std::string> outputs);

extern const char* const kToolVersion;

}  // namespace psigrad
