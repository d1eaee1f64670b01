#include "monorun/cli/record.hpp"

#include <algorithm>

#include "monorun/error.hpp"

namespace monorun::cli {

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  fail(ErrorKind::InvalidInput, "unknown format '" + name + "' (expected json or csv)");
}

Json OutputRecord::to_json() const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["params"] = params;
  j["results"] = results;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  return j;
}

void write_json(std::ostream& os, const OutputRecord& record) { os << record.to_json().dump(2) << '\n'; }

void write_csv(std::ostream& os, const OutputRecord& record) {
  std::vector<std::string> columns;
  for (const auto& row : record.rows) {
    for (const auto& [key, value] : row.items()) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  os << "command";
  for (const auto& c : columns) os << ',' << c;
  os << '\n';
  for (const auto& row : record.rows) {
    os << record.command;
    for (const auto& c : columns) os << ',' << (row.contains(c) ? csv_cell(row[c]) : "");
    os << '\n';
  }
}

void write(std::ostream& os, const OutputRecord& record, Format format) {
  if (format == Format::Csv) {
    write_csv(os, record);
  } else {
    write_json(os, record);
  }
}

Json rational_json(const exact::Rational& r) {
  Json j;
  j["exact"] = numerator(r).str() + "/" + denominator(r).str();
  j["decimal"] = exact::to_double(r);
  return j;
}

}  // namespace monorun::cli
