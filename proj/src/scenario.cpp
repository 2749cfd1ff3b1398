#include "natscc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "natscc/csv.hpp"
#include "natscc/errors.hpp"
#include "natscc/keyvalue.hpp"
#include "natscc/units.hpp"

namespace natscc {

namespace {

constexpr std::string_view kScenarioHeader =
    "country,year,population_millions,income_per_capita_usd2005,carbon_intensity_tc_per_usd";
constexpr std::string_view kHistoricalHeader = "country,year,emissions_mtc";

std::string at(std::string_view country, int year) {
  return std::string(country) + "/" + std::to_string(year);
}

// Collects rows keyed by (country, year) and checks the shared contiguous
// year grid. Returns the year range.
template <typename Row>
std::pair<int, int> check_grid(const std::map<std::string, std::map<int, Row>>& rows,
                               std::string_view origin) {
  if (rows.empty()) throw DataError(std::string(origin) + ": no data rows");
  int lo = rows.begin()->second.begin()->first;
  int hi = rows.begin()->second.rbegin()->first;
  for (const auto& [country, years] : rows) {
    lo = std::min(lo, years.begin()->first);
    hi = std::max(hi, years.rbegin()->first);
  }
  for (const auto& [country, years] : rows) {
    for (int y = lo; y <= hi; ++y) {
      if (!years.count(y))
        throw DataError(std::string(origin) + ": year grid not contiguous, missing " + at(country, y));
    }
  }
  return {lo, hi};
}

}  // namespace

bool is_valid_country_id(std::string_view id) {
  return id.size() == 3 && std::all_of(id.begin(), id.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

Eigen::Index Scenario::find(std::string_view country_id) const {
  auto it = std::lower_bound(countries.begin(), countries.end(), country_id,
                             [](const CountryRecord& r, std::string_view id) { return r.id < id; });
  if (it == countries.end() || it->id != country_id) return -1;
  return it - countries.begin();
}

Eigen::ArrayXXd Scenario::gdp() const { return population * units::kPersonsPerMillion * income; }

void Scenario::validate() const {
  if (countries.empty()) throw DataError("scenario '" + id + "' has no countries");
  if (end_year - start_year < 100)
    throw DataError("scenario '" + id + "' spans " + std::to_string(end_year - start_year) +
                    " years; at least 100 are required");
  for (std::size_t i = 0; i < countries.size(); ++i) {
    if (!is_valid_country_id(countries[i].id))
      throw DataError("invalid country id '" + countries[i].id + "'");
    if (i > 0 && countries[i - 1].id >= countries[i].id)
      throw DataError("country ids must be unique and sorted: '" + countries[i].id + "'");
  }
  const auto n = num_countries();
  const auto t = num_years();
  if (population.rows() != n || population.cols() != t || income.rows() != n || income.cols() != t ||
      carbon_intensity.rows() != n || carbon_intensity.cols() != t)
    throw DataError("scenario '" + id + "' panel shapes do not match countries x years");
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index j = 0; j < t; ++j) {
      const int year = start_year + static_cast<int>(j);
      if (!(population(c, j) > 0.0) || !std::isfinite(population(c, j)))
        throw DataError("population must be > 0 at " + at(countries[c].id, year));
      if (!(income(c, j) > 0.0) || !std::isfinite(income(c, j)))
        throw DataError("income per capita must be > 0 at " + at(countries[c].id, year));
      if (!(carbon_intensity(c, j) >= 0.0) || !std::isfinite(carbon_intensity(c, j)))
        throw DataError("carbon intensity must be >= 0 at " + at(countries[c].id, year));
    }
  }
}

void HistoricalEmissions::validate() const {
  const auto n = static_cast<Eigen::Index>(countries.size());
  if (emissions.rows() != n || emissions.cols() != num_years())
    throw DataError("historical emissions must cover 1960-2015 for every country");
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index j = 0; j < emissions.cols(); ++j)
      if (!(emissions(c, j) >= 0.0) || !std::isfinite(emissions(c, j)))
        throw DataError("historical emissions must be >= 0 at " +
                        at(countries[c], kFirstYear + static_cast<int>(j)));
}

Scenario read_scenario_csv(std::istream& in, std::string_view origin) {
  csv::expect_header(in, kScenarioHeader, origin);
  struct Row {
    double population, income, intensity;
  };
  std::map<std::string, std::map<int, Row>> rows;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = csv::split(line);
    const auto where = std::string(origin) + ":" + std::to_string(line_no);
    if (fields.size() != 5) throw DataError(where + ": expected 5 fields, got " + std::to_string(fields.size()));
    const std::string country(fields[0]);
    if (!is_valid_country_id(country)) throw DataError(where + ": invalid country id '" + country + "'");
    const int year = csv::parse_int(fields[1], origin, line_no);
    Row row{csv::parse_double(fields[2], origin, line_no), csv::parse_double(fields[3], origin, line_no),
            csv::parse_double(fields[4], origin, line_no)};
    if (!rows[country].emplace(year, row).second)
      throw DataError(where + ": duplicate row for " + at(country, year));
  }
  const auto [lo, hi] = check_grid(rows, origin);

  Scenario s;
  s.start_year = lo;
  s.end_year = hi;
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto t = s.num_years();
  s.population.resize(n, t);
  s.income.resize(n, t);
  s.carbon_intensity.resize(n, t);
  Eigen::Index c = 0;
  for (const auto& [country, years] : rows) {
    s.countries.push_back({country, country});
    for (const auto& [year, row] : years) {
      s.population(c, year - lo) = row.population;
      s.income(c, year - lo) = row.income;
      s.carbon_intensity(c, year - lo) = row.intensity;
    }
    ++c;
  }
  s.validate();
  return s;
}

void write_scenario_csv(const Scenario& s, std::ostream& out) {
  out << kScenarioHeader << '\n';
  for (Eigen::Index c = 0; c < s.num_countries(); ++c) {
    for (Eigen::Index j = 0; j < s.num_years(); ++j) {
      out << s.countries[c].id << ',' << s.start_year + j << ',' << format_double(s.population(c, j)) << ','
          << format_double(s.income(c, j)) << ',' << format_double(s.carbon_intensity(c, j)) << '\n';
    }
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open scenario file " + path.string());
  Scenario s = read_scenario_csv(in, path.string());
  s.id = path.stem().string();

  auto sidecar = path;
  sidecar.replace_extension(".toml");
  if (std::filesystem::exists(sidecar)) {
    KeyValues kv;
    try {
      kv = load_key_values(sidecar);
    } catch (const ConfigError& e) {
      throw DataError(e.what());
    }
    for (const auto& [key, value] : kv) {
      try {
        if (key == "id") {
          s.id = value.as_string(key);
        } else if (key == "convergence") {
          s.convergence = value.as_bool(key);
        } else if (key == "notes" || key == "provenance") {
          if (!s.notes.empty()) s.notes += "\n";
          s.notes += value.as_string(key);
        } else if (key.rfind("names.", 0) == 0) {
          const auto idx = s.find(key.substr(6));
          if (idx < 0) throw DataError(sidecar.string() + ": name given for unknown country " + key.substr(6));
          s.countries[idx].name = value.as_string(key);
        } else {
          throw DataError(sidecar.string() + ": unknown key '" + key + "'");
        }
      } catch (const ConfigError& e) {
        throw DataError(sidecar.string() + ": " + e.what());
      }
    }
  }
  return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& csv_path) {
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw DataError("cannot write " + csv_path.string());
    write_scenario_csv(s, out);
  }
  auto sidecar = csv_path;
  sidecar.replace_extension(".toml");
  std::ofstream out(sidecar, std::ios::binary);
  if (!out) throw DataError("cannot write " + sidecar.string());
  out << "id = " << Value::of(s.id).to_string() << '\n';
  out << "convergence = " << (s.convergence ? "true" : "false") << '\n';
  if (!s.notes.empty()) {
    std::string flat = s.notes;
    std::replace(flat.begin(), flat.end(), '\n', ' ');
    out << "notes = " << Value::of(flat).to_string() << '\n';
  }
  bool header = false;
  for (const auto& country : s.countries) {
    if (country.name == country.id) continue;
    if (!header) out << "\n[names]\n";
    header = true;
    out << country.id << " = " << Value::of(country.name).to_string() << '\n';
  }
}

HistoricalEmissions read_historical_emissions_csv(std::istream& in, std::string_view origin) {
  csv::expect_header(in, kHistoricalHeader, origin);
  std::map<std::string, std::map<int, double>> rows;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = csv::split(line);
    const auto where = std::string(origin) + ":" + std::to_string(line_no);
    if (fields.size() != 3) throw DataError(where + ": expected 3 fields, got " + std::to_string(fields.size()));
    const std::string country(fields[0]);
    if (!is_valid_country_id(country)) throw DataError(where + ": invalid country id '" + country + "'");
    const int year = csv::parse_int(fields[1], origin, line_no);
    if (year < HistoricalEmissions::kFirstYear || year > HistoricalEmissions::kLastYear) continue;
    if (!rows[country].emplace(year, csv::parse_double(fields[2], origin, line_no)).second)
      throw DataError(where + ": duplicate row for " + at(country, year));
  }
  const auto [lo, hi] = check_grid(rows, origin);
  if (lo != HistoricalEmissions::kFirstYear || hi != HistoricalEmissions::kLastYear)
    throw DataError(std::string(origin) + ": historical emissions must cover 1960-2015");

  HistoricalEmissions h;
  h.emissions.resize(static_cast<Eigen::Index>(rows.size()), HistoricalEmissions::num_years());
  Eigen::Index c = 0;
  for (const auto& [country, years] : rows) {
    h.countries.push_back(country);
    for (const auto& [year, value] : years) h.emissions(c, year - lo) = value;
    ++c;
  }
  h.validate();
  return h;
}

HistoricalEmissions load_historical_emissions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open historical emissions file " + path.string());
  return read_historical_emissions_csv(in, path.string());
}

void write_historical_emissions_csv(const HistoricalEmissions& h, std::ostream& out) {
  out << kHistoricalHeader << '\n';
  for (std::size_t c = 0; c < h.countries.size(); ++c)
    for (Eigen::Index j = 0; j < h.emissions.cols(); ++j)
      out << h.countries[c] << ',' << HistoricalEmissions::kFirstYear + j << ','
          << format_double(h.emissions(static_cast<Eigen::Index>(c), j)) << '\n';
}

Scenario apply_convergence(const Scenario& s, int horizon_years) {
  if (horizon_years <= 0) throw ConfigError("convergence horizon must be positive");
  s.validate();

  const Eigen::ArrayXXd gdp = s.gdp();
  const Eigen::ArrayXd world_gdp = gdp.colwise().sum().transpose();

  Scenario out = s;
  out.convergence = false;
  for (Eigen::Index j = 1; j < s.num_years(); ++j) {
    const Eigen::ArrayXd own = s.income.col(j) / s.income.col(j - 1) - 1.0;
    const double world_rate = (own * gdp.col(j - 1)).sum() / world_gdp(j - 1);
    const double blend = std::min(1.0, static_cast<double>(j) / horizon_years);
    const Eigen::ArrayXd rate = (1.0 - blend) * own + blend * world_rate;

    Eigen::ArrayXd next = out.income.col(j - 1) * (1.0 + rate);
    const double implied = (s.population.col(j) * units::kPersonsPerMillion * next).sum();
    next *= world_gdp(j) / implied;
    out.income.col(j) = next;
  }
  out.validate();
  return out;
}

}  // namespace natscc
