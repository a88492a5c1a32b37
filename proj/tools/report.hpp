#pragma once

// Tabular results and their json / csv / pretty renderings.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "wgcalc/exact.hpp"

namespace wgcalc::cli {

enum class OutputFormat { Json, Csv, Pretty };

std::string to_string(OutputFormat f);
OutputFormat parse_output_format(const std::string& text);

using Cell = std::variant<std::monostate, std::string, long long, bool, Rational, RationalFunction>;

// Column names may be dotted ("leading.coeff"); json nests them.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool record = false;  // exactly one row, rendered as an object / key-value list

  void add(std::vector<Cell> row);
};

using Report = std::vector<Table>;

void emit(const Report& report, OutputFormat format, std::ostream& out);

}  // namespace wgcalc::cli
