#pragma once

// Baseline simulation, Ramsey discounting and pulse-based social cost of
// carbon.

#include <Eigen/Core>
#include <string>
#include <vector>

#include "natscc/climate.hpp"
#include "natscc/downscaling.hpp"
#include "natscc/impact.hpp"
#include "natscc/scenario.hpp"

namespace natscc {

struct RunConfig {
  std::string scenario_id;
  double prtp = 0.015;  // pure rate of time preference
  double emuc = 1.5;    // elasticity of marginal utility of consumption
  ClimateParams<> climate;
  double initial_concentration = 310.0;  // ppm, before the first scenario year
  double initial_temperature = 0.25;     // degC, before the first scenario year
  BmaImpact impact = published_bma();
  DownscalingParams downscaling;
  int pulse_year = 2015;
  double pulse_size = 10.0;  // MtC
  int horizon_year = 0;      // 0 means the scenario's last year

  int horizon(const Scenario& s) const { return horizon_year == 0 ? s.end_year : horizon_year; }

  /// Throws ConfigError on out-of-range values.
  void validate(const Scenario& s) const;
};

/// Annual simulated state. Country panels are countries x years.
struct WorldTrajectory {
  int start_year = 0;
  int end_year = 0;
  std::vector<std::string> countries;

  Eigen::Matrix<double, kCarbonBoxes, Eigen::Dynamic> box_masses;  // GtC, end of year
  Eigen::ArrayXd concentration;                                    // ppm
  Eigen::ArrayXd temperature;                                      // degC
  Eigen::ArrayXd global_emissions;                                 // MtC per year
  Eigen::ArrayXd global_impact;                                    // fraction of GDP

  Eigen::ArrayXXd population;
  Eigen::ArrayXXd income;  // gross per-capita income
  Eigen::ArrayXXd gdp_gross;
  Eigen::ArrayXXd gdp_net;
  Eigen::ArrayXXd emissions;        // MtC per year
  Eigen::ArrayXXd impact_fraction;  // national
  Eigen::ArrayXXd damage;           // USD per year, -impact_fraction * gdp_gross
  Eigen::ArrayXXd vulnerability;    // national impact per unit of global impact

  Eigen::Index num_years() const { return end_year - start_year + 1; }
  Eigen::Index num_countries() const { return static_cast<Eigen::Index>(countries.size()); }
  Eigen::Index column(int year) const { return year - start_year; }
  bool contains(int year) const { return year >= start_year && year <= end_year; }
};

WorldTrajectory run_baseline(const Scenario& scenario, const RunConfig& config);

/// Country-specific interest rates r_{c,t} = prtp + emuc g_{c,t}. The first
/// year reuses the second year's growth rate.
struct DiscountSchedule {
  int start_year = 0;
  Eigen::ArrayXXd rate;  // countries x years

  Eigen::Index column(int year) const { return year - start_year; }

  /// prod_{u=base+1..s} 1/(1 + r_u) for s = base..last (first column is 1).
  Eigen::ArrayXXd discount_factors(int base_year, int last_year) const;
  /// prod_{u=s+1..target} (1 + r_u) for s = first..target (last column is 1).
  Eigen::ArrayXXd compound_factors(int first_year, int target_year) const;
};

DiscountSchedule ramsey_rates(const WorldTrajectory& traj, double prtp, double emuc);

/// Change in national damages (USD per tonne of carbon) in years
/// pulse_year..last_year from adding pulse_mtc to global emissions in
/// pulse_year. Columns are years.
Eigen::ArrayXXd marginal_damages(const WorldTrajectory& base, const RunConfig& config, int pulse_year,
                                 int last_year, double pulse_mtc);

struct SccTable {
  int pulse_year = 0;
  std::vector<std::string> countries;
  Eigen::ArrayXd scc;  // USD-2005 per tC
  double global_scc = 0.0;
  /// Share of the global net present value contributed by the last ten
  /// years of the horizon; a truncation diagnostic.
  double last_decade_share = 0.0;
};

SccTable compute_scc(const Scenario& scenario, const RunConfig& config);
SccTable compute_scc(const WorldTrajectory& base, const DiscountSchedule& rates, const RunConfig& config);

/// One SccTable per pulse year, sharing a single baseline run.
std::vector<SccTable> scc_path(const Scenario& scenario, const RunConfig& config, const std::vector<int>& years);

/// Annualised growth of each national SCC between two tables.
Eigen::ArrayXd scc_growth(const SccTable& from, const SccTable& to);

}  // namespace natscc
