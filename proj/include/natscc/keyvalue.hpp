#pragma once

// Reader for the flat TOML subset used by run configs and scenario sidecars:
// `key = value` lines, `[table]` headers (keys become `table.key`), `#`
// comments, and values that are strings, booleans, numbers (including
// `inf`/`-inf`) or single-line arrays of those.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace natscc {

struct Value {
  enum class Kind { Bool, Number, String, Array };

  Kind kind = Kind::Number;
  bool boolean = false;
  double number = 0.0;
  std::string text;
  std::vector<Value> items;

  static Value of(bool b);
  static Value of(double x);
  static Value of(std::string s);
  static Value array(std::vector<Value> xs);

  bool as_bool(std::string_view key) const;
  double as_number(std::string_view key) const;
  int as_int(std::string_view key) const;
  const std::string& as_string(std::string_view key) const;
  std::vector<double> as_numbers(std::string_view key) const;

  /// Canonical text form; parse_value(to_string()) reproduces the value.
  std::string to_string() const;
};

using KeyValues = std::map<std::string, Value>;

/// Throws ConfigError with a line number on malformed input.
KeyValues parse_key_values(std::istream& in, std::string_view origin);
KeyValues load_key_values(const std::filesystem::path& path);

/// Parses a single value literal, e.g. `0.015`, `true`, `"bma"`, `[1, 2]`.
/// Bare words that are not numbers or booleans are taken as strings so that
/// command-line overrides like `impact=quadratic` work unquoted.
Value parse_value(std::string_view literal);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

}  // namespace natscc
