#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace natscc {

struct CountryRecord {
  std::string id;  // ISO3
  std::string name;
};

/// True for exactly three uppercase ASCII letters.
bool is_valid_country_id(std::string_view id);

/// Per-country exogenous trajectories on an annual grid. Panels are
/// countries x years; column j is calendar year start_year + j. Countries are
/// kept sorted by id.
struct Scenario {
  std::string id;
  int start_year = 0;
  int end_year = 0;
  /// When set, runs blend per-capita growth rates towards the common rate
  /// (see apply_convergence) before simulating.
  bool convergence = false;
  std::vector<CountryRecord> countries;
  Eigen::ArrayXXd population;        // millions of persons
  Eigen::ArrayXXd income;            // USD-2005 per person per year
  Eigen::ArrayXXd carbon_intensity;  // tC per USD-2005 of output
  std::string notes;

  Eigen::Index num_countries() const { return static_cast<Eigen::Index>(countries.size()); }
  Eigen::Index num_years() const { return end_year - start_year + 1; }
  bool contains(int year) const { return year >= start_year && year <= end_year; }
  Eigen::Index column(int year) const { return year - start_year; }
  /// Index of a country id, or -1.
  Eigen::Index find(std::string_view country_id) const;

  /// Gross output in USD-2005 per year, countries x years.
  Eigen::ArrayXXd gdp() const;

  /// Throws DataError naming the offending country/year.
  void validate() const;
};

/// Historical emissions by country, 1960-2015 inclusive.
struct HistoricalEmissions {
  static constexpr int kFirstYear = 1960;
  static constexpr int kLastYear = 2015;

  std::vector<std::string> countries;  // sorted
  Eigen::ArrayXXd emissions;           // MtC per year, countries x years

  static constexpr int num_years() { return kLastYear - kFirstYear + 1; }
  void validate() const;
};

/// Reads `country,year,population_millions,income_per_capita_usd2005,
/// carbon_intensity_tc_per_usd`. Rows may come in any order; every country
/// must cover the same contiguous range of years.
Scenario read_scenario_csv(std::istream& in, std::string_view origin);

/// Canonical serialisation: sorted by country then year, shortest
/// round-trip decimal formatting, LF line endings.
void write_scenario_csv(const Scenario& s, std::ostream& out);

/// Loads `path` and, if present, the sidecar with the same stem and a
/// `.toml` extension (keys: id, convergence, notes, provenance, names.XXX).
Scenario load_scenario(const std::filesystem::path& path);

/// Writes the CSV and its sidecar.
void save_scenario(const Scenario& s, const std::filesystem::path& csv_path);

HistoricalEmissions read_historical_emissions_csv(std::istream& in, std::string_view origin);
HistoricalEmissions load_historical_emissions(const std::filesystem::path& path);
void write_historical_emissions_csv(const HistoricalEmissions& h, std::ostream& out);

/// Blends each country's per-capita income growth rate linearly from its own
/// rate (at start_year) to the output-weighted world rate (from
/// start_year + horizon_years on), then rescales every year so that world
/// output equals the input scenario's world output. Population and carbon
/// intensity are copied unchanged.
Scenario apply_convergence(const Scenario& s, int horizon_years);

}  // namespace natscc
