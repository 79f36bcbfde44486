#pragma once

#include <charconv>
#include <complex>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "helmdpg/errors.hpp"

namespace helmdpg {

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// One CSV cell.
class CsvCell {
 public:
  CsvCell(double v) : text_(format_double(v)) {}
  CsvCell(const std::string& s) : text_(s) {}
  CsvCell(const char* s) : text_(s) {}
  template <typename I, typename = std::enable_if_t<std::is_integral_v<I>>>
  CsvCell(I v) : text_(std::to_string(v)) {}

  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

/// CSV table: '#' metadata lines, one header line, comma-separated rows, LF endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void meta(const std::string& key, const std::string& value) { meta_.push_back(key + "=" + value); }

  void row(std::vector<CsvCell> cells) {
    if (cells.size() != columns_.size()) {
      throw Error(ErrorKind::DimensionMismatch, "csv row has " + std::to_string(cells.size()) + " cells, expected " +
                                                    std::to_string(columns_.size()));
    }
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i].text();
    }
    rows_.push_back(std::move(line));
  }

  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }

  void write(std::ostream& os) const {
    for (const auto& m : meta_) os << "# " << m << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& r : rows_) os << r << '\n';
  }

  std::string str() const {
    std::string out;
    for (const auto& m : meta_) out += "# " + m + "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
    out += '\n';
    for (const auto& r : rows_) out += r + "\n";
    return out;
  }

  void save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidParameter, "cannot open output file '" + path + "'");
    write(f);
    if (!f) throw Error(ErrorKind::InvalidParameter, "failed writing output file '" + path + "'");
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> meta_;
  std::vector<std::string> rows_;
};

}  // namespace helmdpg
