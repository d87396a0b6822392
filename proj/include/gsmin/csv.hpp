#pragma once

#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace gsmin {

/// Shortest round-trip decimal form of x ("nan", "inf", "-inf" otherwise).
std::string format_double(double x);

struct CsvCell {
  CsvCell(double x) : text(format_double(x)) {}
  CsvCell(int x) : text(std::to_string(x)) {}
  CsvCell(long x) : text(std::to_string(x)) {}
  CsvCell(long long x) : text(std::to_string(x)) {}
  CsvCell(unsigned long x) : text(std::to_string(x)) {}
  CsvCell(bool x) : text(x ? "true" : "false") {}
  CsvCell(const char* s) : text(s) {}
  CsvCell(std::string_view s) : text(s) {}
  CsvCell(const std::string& s) : text(s) {}
  std::string text;
};

/// Comma separated table; fields containing commas or quotes are quoted.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(std::initializer_list<CsvCell> cells);
  void row(const std::vector<CsvCell>& cells);
  void close();

 private:
  void line(const CsvCell* first, std::size_t n);
  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace gsmin
