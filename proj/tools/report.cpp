#include "report.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "wgcalc/error.hpp"

namespace wgcalc::cli {

using ordered_json = nlohmann::ordered_json;

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Pretty: return "pretty";
  }
  return "json";
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "pretty") return OutputFormat::Pretty;
  throw Error(ErrorKind::Config, "unknown output format '" + text + "' (json|csv|pretty)");
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match table '" + name + "'");
  rows.push_back(std::move(row));
}

namespace {

std::string exact_text(const Cell& c) {
  struct V {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const Rational& q) const { return q.to_string(); }
    std::string operator()(const RationalFunction& f) const { return f.to_string(); }
  };
  return std::visit(V{}, c);
}

std::string pretty_text(const Cell& c) {
  if (const auto* q = std::get_if<Rational>(&c)) {
    if (q->denominator() == 1) return q->to_string();
    return q->to_string() + " (" + q->to_decimal(15) + ")";
  }
  if (std::holds_alternative<std::monostate>(c)) return "-";
  return exact_text(c);
}

ordered_json json_cell(const Cell& c) {
  struct V {
    ordered_json operator()(std::monostate) const { return nullptr; }
    ordered_json operator()(const std::string& s) const { return s; }
    ordered_json operator()(long long v) const { return v; }
    ordered_json operator()(bool b) const { return b; }
    ordered_json operator()(const Rational& q) const { return q.to_string(); }
    ordered_json operator()(const RationalFunction& f) const { return f.to_string(); }
  };
  return std::visit(V{}, c);
}

ordered_json json_row(const Table& t, const std::vector<Cell>& row) {
  ordered_json obj = ordered_json::object();
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    ordered_json* slot = &obj;
    std::string key = t.columns[i];
    for (auto dot = key.find('.'); dot != std::string::npos; dot = key.find('.')) {
      slot = &(*slot)[key.substr(0, dot)];
      key = key.substr(dot + 1);
    }
    (*slot)[key] = json_cell(row[i]);
  }
  return obj;
}

ordered_json json_table(const Table& t) {
  if (t.record) return t.rows.empty() ? ordered_json::object() : json_row(t, t.rows.front());
  ordered_json arr = ordered_json::array();
  for (const auto& row : t.rows) arr.push_back(json_row(t, row));
  return arr;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void emit_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_escape(t.columns[i]);
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(exact_text(row[i]));
    out << '\n';
  }
}

void emit_pretty(const Table& t, std::ostream& out) {
  if (t.record) {
    std::size_t width = 0;
    for (const auto& c : t.columns) width = std::max(width, c.size());
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << t.columns[i] << std::string(width - t.columns[i].size(), ' ') << "  " << pretty_text(row[i]) << '\n';
      }
    }
    return;
  }
  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width;
  for (const auto& c : t.columns) width.push_back(c.size());
  for (const auto& row : t.rows) {
    auto& line = text.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(pretty_text(row[i]));
      width[i] = std::max(width[i], line.back().size());
    }
  }
  const auto print = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += "  ";
      line += cells[i] + std::string(width[i] - cells[i].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  print(t.columns);
  for (const auto& line : text) print(line);
}

}  // namespace

void emit(const Report& report, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::Json: {
      ordered_json doc;
      if (report.size() == 1) {
        doc = json_table(report.front());
      } else {
        doc = ordered_json::object();
        for (const auto& t : report) doc[t.name] = json_table(t);
      }
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv:
      for (std::size_t i = 0; i < report.size(); ++i) {
        if (report.size() > 1) out << (i ? "\n" : "") << "# " << report[i].name << '\n';
        emit_csv(report[i], out);
      }
      break;
    case OutputFormat::Pretty:
      for (std::size_t i = 0; i < report.size(); ++i) {
        if (report.size() > 1) out << (i ? "\n" : "") << "== " << report[i].name << " ==\n";
        emit_pretty(report[i], out);
      }
      break;
  }
}

}  // namespace wgcalc::cli
