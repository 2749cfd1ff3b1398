#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace natscc::csv {

/// Plain comma split; the formats read here never quote fields.
std::vector<std::string_view> split(std::string_view line);

/// Reads the header line and checks it matches `expected` exactly.
/// Throws DataError otherwise.
void expect_header(std::istream& in, std::string_view expected, std::string_view origin);

double parse_double(std::string_view field, std::string_view origin, int line_no);
int parse_int(std::string_view field, std::string_view origin, int line_no);

/// Writes a header row followed by `\n`.
void write_header(std::ostream& out, const std::vector<std::string>& columns);

}  // namespace natscc::csv
