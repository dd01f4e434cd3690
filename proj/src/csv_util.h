#ifndef CURRENTLAB_SRC_CSV_UTIL_H_
#define CURRENTLAB_SRC_CSV_UTIL_H_

#include <charconv>
#include <istream>
#include <string>
#include <vector>

#include "currentlab/errors.h"

namespace currentlab::internal {

struct CsvCell {
  std::string text;
  int column = 1;
};

struct CsvRow {
  std::vector<CsvCell> cells;
  int line = 0;
};

inline std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits non-blank lines on commas. Blank lines are skipped.
inline std::vector<CsvRow> ReadCsv(std::istream& in) {
  std::vector<CsvRow> rows;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    CsvRow row;
    row.line = number;
    size_t start = 0;
    while (true) {
      size_t comma = line.find(',', start);
      std::string field = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
      row.cells.push_back({Trim(field), static_cast<int>(start) + 1});
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline bool ParseDouble(const std::string& text, double* out) {
  if (text.empty()) return false;
  const char* begin = text.data();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), *out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

inline bool LooksNumeric(const std::string& text) {
  double v;
  return ParseDouble(text, &v);
}

inline std::vector<double> ParseNumbers(const CsvRow& row) {
  std::vector<double> values;
  for (const auto& cell : row.cells) {
    double v;
    if (!ParseDouble(cell.text, &v)) {
      throw ParseError("not a number: '" + cell.text + "'", row.line, cell.column);
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace currentlab::internal

#endif  // CURRENTLAB_SRC_CSV_UTIL_H_
