#pragma once

// Small CSV / text-file helpers shared by the dataset and telemetry writers.
// Internal to the library; not installed.

#include <cstdio>
#include <ctime>
#include <fstream>
#include <string>
#include <vector>

#include "ldts/error.hpp"

namespace ldts::detail {

// Shortest representation that round-trips a double exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

inline double parse_double(const std::string& field, const std::string& file,
                           std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw FormatError(file + ":" + std::to_string(line_no) +
                      ": expected a number, got '" + field + "'");
  }
}

inline long parse_int(const std::string& field, const std::string& file,
                      std::size_t line_no) {
  try {
    std::size_t used = 0;
    const long v = std::stol(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw FormatError(file + ":" + std::to_string(line_no) +
                      ": expected an integer, got '" + field + "'");
  }
}

// "# generated <UTC timestamp>" comment line for run outputs.
inline std::string timestamp_comment() {
  const std::time_t now = std::time(nullptr);
  char buf[64];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return std::string("# generated ") + buf;
}

// Reads all lines, dropping a trailing empty line. Throws IoError if the
// file cannot be opened.
inline std::vector<std::string> read_lines(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

class FileWriter {
 public:
  explicit FileWriter(const std::string& file) : file_(file), out_(file) {
    if (!out_) throw IoError("cannot open " + file + " for writing");
  }

  void line(const std::string& text) { out_ << text << '\n'; }

  void close() {
    out_.close();
    if (!out_) throw IoError("failed writing " + file_);
  }

 private:
  std::string file_;
  std::ofstream out_;
};

}  // namespace ldts::detail
