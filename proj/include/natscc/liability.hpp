#pragma once

// Blame matrices, net liability and historical climate debt.

#include <Eigen/Core>
#include <string>
#include <vector>

#include "natscc/model.hpp"
#include "natscc/scenario.hpp"

namespace natscc {

/// Harm done to others, damage suffered from others and their difference,
/// all in USD per year of emissions in the evaluation year.
struct LiabilityReport {
  int evaluation_year = 0;
  std::vector<std::string> countries;
  Eigen::ArrayXd harm_done;        // H_c = M_c sum_{i != c} SCC_i
  Eigen::ArrayXd damage_suffered;  // D_c = SCC_c sum_{i != c} M_i
  Eigen::ArrayXd net_liability;    // L_c = H_c - D_c
  Eigen::ArrayXd gdp;              // Y_c, USD per year

  Eigen::ArrayXd harm_over_gdp() const { return harm_done / gdp; }
  Eigen::ArrayXd damage_over_gdp() const { return damage_suffered / gdp; }
  Eigen::ArrayXd net_over_gdp() const { return net_liability / gdp; }
};

/// `scc` in USD per tC, `emissions` in tC per year, `gdp` in USD per year.
/// Throws DataError on mismatched sizes and on zero GDP.
LiabilityReport blame_matrix(const std::vector<std::string>& countries, const Eigen::ArrayXd& scc,
                             const Eigen::ArrayXd& emissions, const Eigen::ArrayXd& gdp, int evaluation_year);

/// Blame matrix for an SCC table, using the trajectory's emissions and gross
/// GDP in the table's pulse year.
LiabilityReport liability_report(const SccTable& scc, const WorldTrajectory& traj);

/// M_c / sum M - SCC_c / sum SCC; its sign is the sign of net liability.
Eigen::ArrayXd share_gap(const Eigen::ArrayXd& scc, const Eigen::ArrayXd& emissions);

/// Interest-compounded damages to the debt year from emissions 1960-2015.
struct DebtLedger {
  static constexpr int kDebtYear = HistoricalEmissions::kLastYear;

  std::vector<std::string> countries;
  std::vector<int> emission_years;  // 1960..2015
  /// USD per tC emitted in year t (columns) owed to country c (rows) in 2015.
  Eigen::ArrayXXd marginal_by_country;
  /// Sum over countries: the marginal global debt D_t.
  Eigen::ArrayXd marginal_debt;
  /// Damages owed to each country by all 1960-2015 emissions (USD, 2015).
  Eigen::ArrayXd gross_debt;
  /// Damages each country's 1960-2015 emissions did to other countries.
  Eigen::ArrayXd gross_harm;
  /// gross_harm - debt owed to the country by others; sums to zero.
  Eigen::ArrayXd net_debt;
};

/// Runs one pulse per emission year (in parallel up to `workers`), then
/// attributes debts with each year's historical emission shares.
DebtLedger historical_debt(const WorldTrajectory& base, const RunConfig& config, const HistoricalEmissions& hist,
                           int workers = 1);
DebtLedger historical_debt(const Scenario& scenario, const RunConfig& config, const HistoricalEmissions& hist,
                           int workers = 1);

}  // namespace natscc
