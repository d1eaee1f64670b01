#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "monorun/exact.hpp"

namespace monorun::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "monorun/1";

enum class Format { Json, Csv };

Format parse_format(const std::string& name);

/// One command invocation: its inputs, its results, and the seed that drove
/// any randomness (absent for deterministic commands).
struct OutputRecord {
  std::string command;
  Json params = Json::object();
  Json results = Json::object();
  std::optional<std::uint64_t> seed;
  // flat rows for CSV; every row is an object of scalars
  std::vector<Json> rows;

  Json to_json() const;
};

void write_json(std::ostream& os, const OutputRecord& record);

/// Header is `command` followed by the union of row keys in first-seen order.
void write_csv(std::ostream& os, const OutputRecord& record);

void write(std::ostream& os, const OutputRecord& record, Format format);

/// {"exact": "p/q", "decimal": p/q as a double}
Json rational_json(const exact::Rational& r);

}  // namespace monorun::cli
