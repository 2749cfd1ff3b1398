#pragma once

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "natscc/scenario.hpp"
#include "natscc/settings.hpp"

namespace natscc::testing {

inline std::filesystem::path source_path(const std::string& relative) {
  return std::filesystem::path(NATSCC_SOURCE_DIR) / relative;
}

inline const nlohmann::json& oracle() {
  static const nlohmann::json j = [] {
    std::ifstream in(source_path("tests/oracles/expected.json"));
    return nlohmann::json::parse(in);
  }();
  return j;
}

inline double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline Settings default_settings() { return Settings::load(source_path("configs/default.toml")); }

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("natscc_" + tag + "_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Small hand-built scenario: constant population, income growing at a
/// country-specific rate and constant carbon intensity.
struct ToyCountry {
  std::string id;
  double population = 10.0;       // millions
  double income = 10000.0;        // USD per person in the first year
  double growth = 0.0;            // per year
  double carbon_intensity = 1e-4;  // tC per USD
};

inline Scenario toy_scenario(const std::vector<ToyCountry>& countries, int start = 1950, int end = 2100) {
  Scenario s;
  s.id = "toy";
  s.start_year = start;
  s.end_year = end;
  const Eigen::Index n = static_cast<Eigen::Index>(countries.size());
  const Eigen::Index y = end - start + 1;
  s.population.resize(n, y);
  s.income.resize(n, y);
  s.carbon_intensity.resize(n, y);
  for (Eigen::Index c = 0; c < n; ++c) {
    s.countries.push_back({countries[c].id, countries[c].id});
    for (Eigen::Index t = 0; t < y; ++t) {
      s.population(c, t) = countries[c].population;
      s.income(c, t) = countries[c].income * std::pow(1.0 + countries[c].growth, static_cast<double>(t));
      s.carbon_intensity(c, t) = countries[c].carbon_intensity;
    }
  }
  s.validate();
  return s;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace natscc::testing
