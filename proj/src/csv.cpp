#include "gsmin/csv.hpp"

#include <charconv>
#include <cmath>

#include "gsmin/error.hpp"

namespace gsmin {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), out_(path), columns_(header.size()) {
  if (!out_) fail(ErrorCode::Io, "cannot open " + path + " for writing");
  std::vector<CsvCell> cells(header.begin(), header.end());
  line(cells.data(), cells.size());
}

void CsvWriter::row(std::initializer_list<CsvCell> cells) { line(cells.begin(), cells.size()); }

void CsvWriter::row(const std::vector<CsvCell>& cells) { line(cells.data(), cells.size()); }

void CsvWriter::line(const CsvCell* first, std::size_t n) {
  require(n == columns_, "csv row has the wrong number of fields");
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out_ << ',';
    const std::string& t = first[i].text;
    if (t.find_first_of(",\"\n") == std::string::npos) {
      out_ << t;
    } else {
      out_ << '"';
      for (char c : t) {
        if (c == '"') out_ << '"';
        out_ << c;
      }
      out_ << '"';
    }
  }
  out_ << '\n';
  if (!out_) fail(ErrorCode::Io, "write failed on " + path_);
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) fail(ErrorCode::Io, "cannot close " + path_);
}

}  // namespace gsmin
