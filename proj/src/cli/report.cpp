#include <cmath>
#include <cstdio>
#include <ostream>

#include "casimir/cli.hpp"
#include "json.hpp"

namespace casimir::cli {

namespace {

std::string csv_field(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  const auto& s = std::get<std::string>(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i];
  os << '\n';
}

// Non-finite values have no JSON number form; they are written as the same
// strings the CSV uses.
nlohmann::ordered_json json_value(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    if (std::isfinite(*d)) return *d == 0.0 ? 0.0 : *d;
    return format_double(*d);
  }
  return std::get<std::string>(v);
}

Table checks_table(const std::vector<Check>& checks) {
  Table t{"checks", {"check", "value", "limit", "status"}, {}};
  for (const auto& c : checks) t.rows.push_back({c.name, c.value, c.limit, std::string(c.pass ? "pass" : "FAIL")});
  return t;
}

}  // namespace

bool Report::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const Report& report, std::ostream& os) {
  for (const auto& [key, value] : report.config) os << "# " << key << " = " << value << '\n';
  std::vector<const Table*> tables;
  for (const auto& t : report.tables) tables.push_back(&t);
  const Table checks = checks_table(report.checks);
  if (!report.checks.empty()) tables.push_back(&checks);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i) os << '\n';
    os << "# table = " << tables[i]->name << '\n';
    write_row(os, tables[i]->columns);
    for (const auto& row : tables[i]->rows) {
      std::vector<std::string> fields;
      for (const auto& v : row) fields.push_back(csv_field(v));
      write_row(os, fields);
    }
  }
}

void write_json(const Report& report, std::ostream& os) {
  nlohmann::ordered_json doc;
  auto& config = doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.config) config[key] = value;
  auto& results = doc["results"] = nlohmann::ordered_json::object();
  for (const auto& t : report.tables) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = json_value(row[i]);
      rows.push_back(std::move(obj));
    }
    results[t.name] = std::move(rows);
  }
  auto& checks = doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"check", c.name}, {"value", json_value(c.value)}, {"limit", c.limit},
                      {"status", c.pass ? "pass" : "FAIL"}});
  os << doc.dump(2) << '\n';
}

}  // namespace casimir::cli
