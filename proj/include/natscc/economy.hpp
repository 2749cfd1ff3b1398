#pragma once

// Exogenous-path economy: gross output follows the scenario, climate damages
// are a side channel on net output and never feed back into growth or
// emissions.

#include <Eigen/Core>
#include <string>

#include "natscc/errors.hpp"
#include "natscc/scenario.hpp"
#include "natscc/units.hpp"

namespace natscc {

/// Per-country state for one year; all arrays are indexed like
/// Scenario::countries.
struct EconomyYear {
  int year = 0;
  Eigen::ArrayXd population;         // millions
  Eigen::ArrayXd income_per_capita;  // USD-2005 per person, gross
  Eigen::ArrayXd gdp_gross;          // USD-2005 per year
  Eigen::ArrayXd gdp_net;            // after damages
  Eigen::ArrayXd emissions;          // MtC per year, from gross output
  Eigen::ArrayXd impact_fraction;    // negative = damage
};

inline EconomyYear advance_economy(const Scenario& scenario, int year, const Eigen::ArrayXd& impact_fraction) {
  if (!scenario.contains(year)) throw DataError("year " + std::to_string(year) + " is outside the scenario");
  if (impact_fraction.size() != scenario.num_countries())
    throw DataError("impact vector does not match the scenario's countries");
  for (Eigen::Index c = 0; c < impact_fraction.size(); ++c) {
    if (!(impact_fraction(c) > -1.0))
      throw NumericalError("impacts of " + std::to_string(impact_fraction(c) * 100.0) + "% of GDP annihilate " +
                           scenario.countries[c].id + " in " + std::to_string(year));
  }
  const auto j = scenario.column(year);
  EconomyYear out;
  out.year = year;
  out.population = scenario.population.col(j);
  out.income_per_capita = scenario.income.col(j);
  out.gdp_gross = out.population * units::kPersonsPerMillion * out.income_per_capita;
  out.impact_fraction = impact_fraction;
  out.gdp_net = out.gdp_gross * (1.0 + impact_fraction);
  out.emissions = out.gdp_gross * scenario.carbon_intensity.col(j) / units::kTonnesPerMegatonne;
  return out;
}

/// Per-capita income growth rate of each country between two years.
template <typename Derived>
Eigen::ArrayXd per_capita_growth(const Eigen::ArrayBase<Derived>& income, const Eigen::ArrayBase<Derived>& previous) {
  return income / previous - 1.0;
}

inline Eigen::ArrayXd per_capita_growth(const EconomyYear& now, const EconomyYear& prev) {
  return per_capita_growth(now.income_per_capita, prev.income_per_capita);
}

/// World GDP divided by world population.
inline double world_average_income(const EconomyYear& state) {
  return state.gdp_gross.sum() / (state.population.sum() * units::kPersonsPerMillion);
}

/// Country growth rates weighted by previous-year gross output.
inline double output_weighted_growth(const EconomyYear& now, const EconomyYear& prev) {
  return (per_capita_growth(now, prev) * prev.gdp_gross).sum() / prev.gdp_gross.sum();
}

}  // namespace natscc
