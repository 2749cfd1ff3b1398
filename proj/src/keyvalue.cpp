#include "natscc/keyvalue.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "natscc/errors.hpp"

namespace natscc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Strips a trailing comment that is not inside a string literal.
std::string_view strip_comment(std::string_view s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

bool parse_number(std::string_view s, double& out) {
  if (s == "inf" || s == "+inf") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  if (s == "-inf") {
    out = -std::numeric_limits<double>::infinity();
    return true;
  }
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::vector<std::string_view> split_array_items(std::string_view body) {
  std::vector<std::string_view> items;
  bool in_string = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '"') in_string = !in_string;
    if (body[i] == ',' && !in_string) {
      items.push_back(trim(body.substr(start, i - start)));
      start = i + 1;
    }
  }
  auto tail = trim(body.substr(start));
  if (!tail.empty()) items.push_back(tail);
  return items;
}

}  // namespace

Value Value::of(bool b) {
  Value v;
  v.kind = Kind::Bool;
  v.boolean = b;
  return v;
}

Value Value::of(double x) {
  Value v;
  v.kind = Kind::Number;
  v.number = x;
  return v;
}

Value Value::of(std::string s) {
  Value v;
  v.kind = Kind::String;
  v.text = std::move(s);
  return v;
}

Value Value::array(std::vector<Value> xs) {
  Value v;
  v.kind = Kind::Array;
  v.items = std::move(xs);
  return v;
}

bool Value::as_bool(std::string_view key) const {
  if (kind != Kind::Bool) throw ConfigError("key '" + std::string(key) + "' expects true/false");
  return boolean;
}

double Value::as_number(std::string_view key) const {
  if (kind != Kind::Number) throw ConfigError("key '" + std::string(key) + "' expects a number");
  return number;
}

int Value::as_int(std::string_view key) const {
  const double x = as_number(key);
  if (!std::isfinite(x) || std::floor(x) != x)
    throw ConfigError("key '" + std::string(key) + "' expects an integer");
  return static_cast<int>(x);
}

const std::string& Value::as_string(std::string_view key) const {
  if (kind != Kind::String) throw ConfigError("key '" + std::string(key) + "' expects a string");
  return text;
}

std::vector<double> Value::as_numbers(std::string_view key) const {
  if (kind != Kind::Array) throw ConfigError("key '" + std::string(key) + "' expects an array");
  std::vector<double> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.as_number(key));
  return out;
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string Value::to_string() const {
  switch (kind) {
    case Kind::Bool:
      return boolean ? "true" : "false";
    case Kind::Number:
      return format_double(number);
    case Kind::String:
      return "\"" + text + "\"";
    case Kind::Array: {
      std::string out = "[";
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i].to_string();
      }
      return out + "]";
    }
  }
  return {};
}

Value parse_value(std::string_view literal) {
  const auto s = trim(literal);
  if (s.empty()) throw ConfigError("empty value");
  if (s == "true") return Value::of(true);
  if (s == "false") return Value::of(false);
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') throw ConfigError("unterminated string: " + std::string(s));
    return Value::of(std::string(s.substr(1, s.size() - 2)));
  }
  if (s.front() == '[') {
    if (s.back() != ']') throw ConfigError("unterminated array: " + std::string(s));
    std::vector<Value> items;
    for (auto item : split_array_items(s.substr(1, s.size() - 2))) items.push_back(parse_value(item));
    return Value::array(std::move(items));
  }
  double x = 0.0;
  if (parse_number(s, x)) return Value::of(x);
  return Value::of(std::string(s));
}

KeyValues parse_key_values(std::istream& in, std::string_view origin) {
  KeyValues out;
  std::string table;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto where = [&] { return std::string(origin) + ":" + std::to_string(line_no); };
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where() + ": malformed table header");
      table = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where() + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where() + ": empty key");
    const std::string full = table.empty() ? std::string(key) : table + "." + std::string(key);
    try {
      if (!out.emplace(full, parse_value(line.substr(eq + 1))).second)
        throw ConfigError("duplicate key '" + full + "'");
    } catch (const ConfigError& e) {
      throw ConfigError(where() + ": " + e.what());
    }
  }
  return out;
}

KeyValues load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  return parse_key_values(in, path.string());
}

}  // namespace natscc
