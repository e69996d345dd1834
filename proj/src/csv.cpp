#include "qdisp/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "qdisp/error.hpp"

namespace qdisp::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

bool parse_double(const std::string& s, double& v) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  return ec == std::errc() && p == end;
}

}  // namespace

std::string format_number(double v) { return fmt::format("{:.12g}", v); }

void write_csv(std::ostream& os, const CsvTable& t) {
  std::string out;
  for (const auto& [k, v] : t.config) out += fmt::format("# {}={}\n", k, v);
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out += (i ? "," : "") + t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  os << out;
}

void save_csv(const std::string& path, const CsvTable& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + path + " for writing");
  write_csv(os, t);
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string::npos) t.config.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    const auto cells = split(line);
    std::vector<double> row(cells.size());
    bool numeric = true;
    for (std::size_t i = 0; i < cells.size() && numeric; ++i) numeric = parse_double(cells[i], row[i]);
    if (!numeric) {
      if (t.columns.empty() && t.rows.empty()) {
        t.columns = cells;
        continue;
      }
      throw ConfigError(fmt::format("line {}: non-numeric value", line_no));
    }
    if (!t.rows.empty() && row.size() != t.rows.front().size()) {
      throw ConfigError(fmt::format("line {}: ragged row", line_no));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable load_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path);
  return read_csv(is);
}

}  // namespace qdisp::io
