#pragma once

// Imputation after calibration: a global impact is spread across countries in
// proportion to (y_c / y_ref)^elasticity, with a normalising constant chosen
// so that national dollar impacts add up to the global dollar impact.

#include <Eigen/Core>
#include <cmath>

#include "natscc/errors.hpp"

namespace natscc {

struct DownscalingParams {
  double income_elasticity = -0.36;
  int calibration_year = 2010;
};

/// Normalising constant and reference income fixed at calibration.
struct VulnerabilityCalibration {
  double income_elasticity = 0.0;
  double reference_income = 1.0;  // GDP-weighted world per-capita income
  double normaliser = 1.0;        // k
};

/// Calibrates on one year's per-capita incomes and GDPs.
template <typename IncomeArray, typename GdpArray>
VulnerabilityCalibration calibrate_vulnerability(const Eigen::ArrayBase<IncomeArray>& income,
                                                 const Eigen::ArrayBase<GdpArray>& gdp, double income_elasticity) {
  if (income.size() != gdp.size() || income.size() == 0)
    throw DataError("downscaling needs matching, non-empty income and GDP arrays");
  if (!(income > 0.0).all()) throw DataError("downscaling needs positive per-capita incomes");
  const double total_gdp = gdp.sum();
  if (!(total_gdp > 0.0)) throw NumericalError("downscaling is degenerate: total GDP is zero");
  VulnerabilityCalibration cal;
  cal.income_elasticity = income_elasticity;
  cal.reference_income = total_gdp / (gdp / income).sum();
  const double weighted = (gdp * (income / cal.reference_income).pow(income_elasticity)).sum();
  if (!(weighted > 0.0) || !std::isfinite(weighted)) throw NumericalError("downscaling is degenerate");
  cal.normaliser = total_gdp / weighted;
  return cal;
}

/// k (y_c / y_ref)^elasticity for the given incomes. Multiply by the global
/// impact fraction to get national impact fractions.
template <typename IncomeArray>
Eigen::ArrayXd relative_vulnerability(const VulnerabilityCalibration& cal,
                                      const Eigen::ArrayBase<IncomeArray>& income) {
  return cal.normaliser * (income / cal.reference_income).pow(cal.income_elasticity);
}

/// National impact fractions for one year, calibrated on that same year, so
/// sum_c i_c Y_c equals global_impact * sum_c Y_c.
template <typename IncomeArray, typename GdpArray>
Eigen::ArrayXd downscale(double global_impact, const Eigen::ArrayBase<IncomeArray>& income,
                         const Eigen::ArrayBase<GdpArray>& gdp, double income_elasticity) {
  const auto cal = calibrate_vulnerability(income, gdp, income_elasticity);
  return global_impact * relative_vulnerability(cal, income);
}

}  // namespace natscc
