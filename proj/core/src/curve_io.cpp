#include "rbsim/curve_io.hpp"

#include <charconv>
#include <sstream>

#include "rbsim/error.hpp"
#include "rbsim/units.hpp"

namespace rbsim::io {
namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    out.emplace_back(line.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

}  // namespace

void CurveTable::add_row(std::vector<std::optional<double>> values,
                         std::string row_status) {
  if (values.size() != columns.size()) {
    throw Error("curve table: row has " + std::to_string(values.size()) +
                " values for " + std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(values));
  status.push_back(std::move(row_status));
}

std::string write_csv(const CurveTable& table, const CurveMetadata& meta) {
  std::ostringstream os;
  os << "# rbsim curve file\n";
  os << "# figure: " << meta.figure << "\n";
  os << "# title: " << meta.title << "\n";
  os << "# scenario: " << meta.scenario << "\n";
  os << "# config-digest: " << meta.config_digest << "\n";
  os << "# columns:";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i == 0 ? " " : ", ") << table.columns[i].name << " ["
       << table.columns[i].unit << "]";
  }
  os << ", status [-]\n";
  os << "# config-begin\n";
  for (std::string_view line : lines_of(meta.config_text)) {
    os << "#" << (line.empty() ? "" : " ") << line << "\n";
  }
  os << "# config-end\n";

  for (const auto& c : table.columns) os << c.name << ",";
  os << "status\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (const auto& cell : table.rows[r]) {
      if (cell) os << units::format_double(*cell);
      os << ",";
    }
    os << table.status[r] << "\n";
  }
  return os.str();
}

ParsedCurveFile read_csv(std::string_view text) {
  ParsedCurveFile out;
  bool in_config = false;
  bool have_header = false;
  std::string config;
  std::map<std::string, std::string> units_by_column;

  for (std::string_view line : lines_of(text)) {
    if (line.starts_with("#")) {
      std::string_view body = line.substr(1);
      if (body.starts_with(" ")) body.remove_prefix(1);
      if (body == "config-begin") {
        in_config = true;
      } else if (body == "config-end") {
        in_config = false;
      } else if (in_config) {
        config.append(body).push_back('\n');
      } else if (auto colon = body.find(": "); colon != std::string_view::npos) {
        out.metadata.emplace(std::string(body.substr(0, colon)),
                             std::string(body.substr(colon + 2)));
      }
      continue;
    }
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (!have_header) {
      if (cells.empty() || cells.back() != "status") {
        throw Error("curve file: header row must end with 'status'");
      }
      for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
        out.table.columns.push_back({cells[i], {}});
      }
      have_header = true;
      continue;
    }
    if (cells.size() != out.table.columns.size() + 1) {
      throw Error("curve file: row has " + std::to_string(cells.size()) +
                  " cells, expected " +
                  std::to_string(out.table.columns.size() + 1));
    }
    std::vector<std::optional<double>> values;
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
      if (cells[i].empty()) {
        values.push_back(std::nullopt);
        continue;
      }
      double v = 0.0;
      const char* first = cells[i].data();
      const char* last = first + cells[i].size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc{} || ptr != last) {
        throw Error("curve file: malformed number '" + cells[i] + "'");
      }
      values.push_back(v);
    }
    out.table.add_row(std::move(values), cells.back());
  }
  if (!have_header) throw Error("curve file: missing header row");

  // Units come from the "columns" metadata line: "name [unit], ...".
  if (auto it = out.metadata.find("columns"); it != out.metadata.end()) {
    for (const std::string& entry : split(it->second, ',')) {
      std::string_view e = entry;
      while (e.starts_with(" ")) e.remove_prefix(1);
      const auto open = e.find(" [");
      if (open == std::string_view::npos || !e.ends_with("]")) continue;
      units_by_column[std::string(e.substr(0, open))] =
          std::string(e.substr(open + 2, e.size() - open - 3));
    }
    for (auto& c : out.table.columns) c.unit = units_by_column[c.name];
  }
  out.config_text = std::move(config);
  return out;
}

}  // namespace rbsim::io
