#ifndef ADASTREAM_CSV_H_
#define ADASTREAM_CSV_H_

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace adastream {

// Shortest text that round-trips to the same double. Locale independent.
std::string format_double(double value);

// Minimal RFC 4180 reader: comma separated, optional double quotes, header
// row required. Blank lines are skipped.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in);

  const std::vector<std::string>& header() const { return header_; }

  // Column index for name; throws DataError naming the column when absent.
  std::size_t column(std::string_view name) const;

  // Reads the next record. Returns false at end of input.
  bool next(std::vector<std::string>& fields);

  // 1-based line number of the record returned by the last next() call.
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::vector<std::string> header_;
  std::map<std::string, std::size_t, std::less<>> columns_;
  std::size_t line_ = 0;
};

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_number);

// Throw ParseError carrying the line number and column name.
double parse_double(std::string_view text, std::size_t line, std::string_view column);
long long parse_int(std::string_view text, std::size_t line, std::string_view column);

// Quotes the field when it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

}  // namespace adastream

#endif  // ADASTREAM_CSV_H_
