#include "natscc/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "natscc/errors.hpp"

namespace natscc::csv {

std::vector<std::string_view> split(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void expect_header(std::istream& in, std::string_view expected, std::string_view origin) {
  std::string header;
  if (!std::getline(in, header)) throw DataError(std::string(origin) + ": empty file");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0) header.erase(0, 3);
  if (header != expected)
    throw DataError(std::string(origin) + ":1: expected header '" + std::string(expected) + "', got '" +
                    header + "'");
}

double parse_double(std::string_view field, std::string_view origin, int line_no) {
  double x = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, x);
  if (field.empty() || ec != std::errc{} || ptr != end)
    throw DataError(std::string(origin) + ":" + std::to_string(line_no) + ": not a number: '" +
                    std::string(field) + "'");
  return x;
}

int parse_int(std::string_view field, std::string_view origin, int line_no) {
  int x = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, x);
  if (field.empty() || ec != std::errc{} || ptr != end)
    throw DataError(std::string(origin) + ":" + std::to_string(line_no) + ": not an integer: '" +
                    std::string(field) + "'");
  return x;
}

void write_header(std::ostream& out, const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out << ',';
    out << columns[i];
  }
  out << '\n';
}

}  // namespace natscc::csv
