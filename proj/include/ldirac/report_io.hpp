#pragma once

#include <string>
#include <vector>

#include "ldirac/verify.hpp"

namespace ldirac::io {

inline constexpr const char* kSchemaVersion = "1";

/// 17 significant digits, independent of the locale.
std::string format_number(double v);

/// Column-named numeric table (state samples, sweep rows).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string table_csv(const Table& t);
std::string table_json(const Table& t);

std::string report_json(const verify::VerificationReport& rep);
/// One row per check: name, residual, tolerance, passed, informative.
std::string report_csv(const verify::VerificationReport& rep);

std::string sweep_csv(const verify::SweepResult& s);
std::string sweep_json(const verify::SweepResult& s);

/// Writes to a sibling temporary file and renames it over `path`.
/// Throws std::runtime_error on any I/O failure.
void write_atomic(const std::string& path, const std::string& content);

/// Throws std::runtime_error when the file cannot be read.
std::string read_file(const std::string& path);

struct ReportValidation {
  /// Parsed, schema "1", and every field present with the right type.
  bool well_formed = false;
  /// passed == (residual <= tolerance) for every check and `overall`
  /// equals the AND over non-informative checks.
  bool consistent = false;
  /// The recomputed verdict.
  bool overall = false;
  std::string message;
};

ReportValidation validate_report_json(const std::string& text);

}  // namespace ldirac::io
