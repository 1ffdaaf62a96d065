#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace nsgcli {

using Json = nlohmann::ordered_json;

/// Deterministic double formatting for reports; reruns and different worker
/// counts must produce byte-identical output.
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

/// Sets render as space-separated integers (quoted in CSV).
inline std::string fmt_set(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(xs[i]);
  }
  return out;
}

/// One report: a JSON object (with its schema field already set) plus the
/// equivalent CSV table. `ok` carries the verification verdict for
/// sub-commands that assert identities.
struct Report {
  Json json;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  bool ok = true;

  static Report make(const std::string& schema) {
    Report r;
    r.json["schema"] = schema;
    return r;
  }
};

inline std::string csv_quote(const std::string& field) {
  bool needs = field.find_first_of(",\"\n") != std::string::npos ||
               field.find(' ') != std::string::npos;
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Comma-separated, header row, LF line endings.
inline std::string to_csv(const Report& r) {
  std::string out;
  for (std::size_t i = 0; i < r.csv_header.size(); ++i) {
    if (i) out += ',';
    out += csv_quote(r.csv_header[i]);
  }
  out += '\n';
  for (const auto& row : r.csv_rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_quote(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline std::string render(const Report& r, const std::string& format) {
  if (format == "csv") return to_csv(r);
  return r.json.dump(2) + "\n";
}

}  // namespace nsgcli
