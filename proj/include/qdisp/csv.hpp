#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qdisp::io {

using ConfigLines = std::vector<std::pair<std::string, std::string>>;

/// Numeric table written as "# key=value" comment lines, a header row and
/// comma-separated rows. Numbers use a fixed 12 significant digit format so
/// identical inputs give identical bytes.
struct CsvTable {
  ConfigLines config;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_number(double v);

void write_csv(std::ostream& os, const CsvTable& t);
void save_csv(const std::string& path, const CsvTable& t);

/// Reads a table written by write_csv (or any numeric CSV). Comment lines are
/// kept in `config` when they have the key=value form. A first row that does
/// not parse as numbers is taken as the header. Throws ConfigError.
CsvTable read_csv(std::istream& is);
CsvTable load_csv(const std::string& path);

}  // namespace qdisp::io
