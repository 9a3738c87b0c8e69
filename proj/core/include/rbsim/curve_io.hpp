#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rbsim::io {

struct Column {
  std::string name;
  std::string unit;
};

// Rectangular curve data: the first column is the abscissa. Missing values
// are empty cells and the row's status says why.
struct CurveTable {
  std::vector<Column> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  std::vector<std::string> status;

  void add_row(std::vector<std::optional<double>> values, std::string row_status);
};

struct CurveMetadata {
  std::string figure;
  std::string title;
  std::string scenario;
  std::string config_digest;
  std::string config_text;
};

// CSV with a '#'-prefixed metadata block embedding the full configuration,
// one header row, then data rows with a trailing status column. Values use
// the shortest round-trip decimal form.
std::string write_csv(const CurveTable& table, const CurveMetadata& meta);

struct ParsedCurveFile {
  std::map<std::string, std::string> metadata;
  std::string config_text;
  CurveTable table;
};

// Inverse of write_csv. Throws Error on malformed input.
ParsedCurveFile read_csv(std::string_view text);

}  // namespace rbsim::io
