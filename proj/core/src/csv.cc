#include "adastream/csv.h"

#include <array>
#include <charconv>
#include <cmath>

#include "adastream/errors.h"

namespace adastream {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  // Whole numbers such as bitrates read better without an exponent.
  const bool integral = std::isfinite(value) && std::fabs(value) < 1e15 && value == std::trunc(value);
  auto [ptr, ec] = integral ? std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                            std::chars_format::fixed)
                            : std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw Error("failed to format double");
  return std::string(buf.data(), ptr);
}

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_number) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_number);
  fields.push_back(std::move(current));
  return fields;
}

CsvReader::CsvReader(std::istream& in) : in_(in) {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    header_ = split_csv_line(text, line_);
    break;
  }
  if (header_.empty()) throw ParseError("missing header row", line_);
  for (std::size_t i = 0; i < header_.size(); ++i) columns_.emplace(header_[i], i);
}

std::size_t CsvReader::column(std::string_view name) const {
  auto it = columns_.find(name);
  if (it == columns_.end()) {
    throw DataError("missing column '" + std::string(name) + "'");
  }
  return it->second;
}

bool CsvReader::next(std::vector<std::string>& fields) {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    fields = split_csv_line(text, line_);
    if (fields.size() != header_.size()) {
      throw ParseError("expected " + std::to_string(header_.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_);
    }
    return true;
  }
  return false;
}

double parse_double(std::string_view text, std::size_t line, std::string_view column) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError("column '" + std::string(column) + "': not a number: '" +
                         std::string(text) + "'",
                     line);
  }
  if (!std::isfinite(value)) {
    throw ParseError("column '" + std::string(column) + "': non-finite value", line);
  }
  return value;
}

long long parse_int(std::string_view text, std::size_t line, std::string_view column) {
  long long value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError("column '" + std::string(column) + "': not an integer: '" +
                         std::string(text) + "'",
                     line);
  }
  return value;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace adastream
