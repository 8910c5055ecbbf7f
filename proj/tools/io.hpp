#pragma once

// Output files: CSV profiles with the resolved config embedded as `#` lines,
// and JSON results. No timestamps, so identical configs give identical bytes.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "logse/errors.hpp"

namespace logse::cli {

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns,
            const std::string& config_text)
      : path_(path), out_(path), width_(columns.size()) {
    if (!out_) throw DomainError("cannot open output file " + path.string());
    std::istringstream lines(config_text);
    for (std::string line; std::getline(lines, line);) {
      out_ << (line.rfind('#', 0) == 0 ? "" : "# ") << line << "\n";
    }
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
  }

  void row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

  void row(const std::vector<double>& values) {
    if (values.size() != width_) throw DomainError("CsvWriter: row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
    out_ << "\n";
  }

  [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t width_;
};

inline void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open output file " + path.string());
  out << j.dump(2) << "\n";
}

/// Non-finite numbers become JSON strings instead of silently turning into null.
inline nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

}  // namespace logse::cli
