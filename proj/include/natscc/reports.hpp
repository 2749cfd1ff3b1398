#pragma once

// CSV writers for run outputs and the per-figure plot data.
//
// Every table has a header row and rows in ascending country code (then
// year). Money is USD-2005, carbon is tonnes of carbon.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "natscc/liability.hpp"
#include "natscc/model.hpp"
#include "natscc/settings.hpp"

namespace natscc {

/// country,scc_usd2005_per_tc,pulse_year,global_scc,config_hash
void write_scc_csv(const SccTable& scc, const std::string& config_hash, std::ostream& out);
/// country,pulse_year,scc_usd2005_per_tc,global_scc,config_hash
void write_scc_path_csv(const std::vector<SccTable>& path, const std::string& config_hash, std::ostream& out);
/// country,harm_done_usd,damage_suffered_usd,net_liability_usd,net_liability_over_gdp
void write_liability_csv(const LiabilityReport& report, std::ostream& out);
/// country,gross_debt_usd,net_debt_usd
void write_debt_csv(const DebtLedger& ledger, std::ostream& out);
/// emission_year,marginal_debt_usd_per_tc
void write_marginal_debt_csv(const DebtLedger& ledger, std::ostream& out);
/// year,emissions_mtc,concentration_ppm,temperature_c,global_impact_fraction,box1_gtc..box5_gtc
void write_trajectory_global_csv(const WorldTrajectory& traj, std::ostream& out);
/// country,year,population_millions,income_per_capita_usd2005,gdp_gross_usd,gdp_net_usd,emissions_mtc,
/// impact_fraction,damage_usd
void write_trajectory_countries_csv(const WorldTrajectory& traj, std::ostream& out);

/// Value added per tonne of carbon next to the national SCC.
struct CarbonEfficiency {
  int year = 0;
  std::vector<std::string> countries;  // countries with positive emissions
  std::vector<double> efficiency;      // USD per tC
  std::vector<double> scc;             // USD per tC
  std::vector<std::string> omitted;    // zero-emission countries
  int violations = 0;                  // countries with scc > efficiency
};

CarbonEfficiency carbon_efficiency(const WorldTrajectory& traj, const SccTable& scc);
/// country,carbon_efficiency_usd_per_tc,scc_usd2005_per_tc,scc_exceeds_efficiency
void write_carbon_efficiency_csv(const CarbonEfficiency& table, std::ostream& out);

/// R^2 of the least-squares line of temperature on cumulative emissions over
/// [first_year, last_year].
double warming_linearity_r2(const WorldTrajectory& traj, int first_year, int last_year);

/// Files written and the diagnostics gathered while writing them.
struct OutputRecord {
  std::vector<std::string> files;
  std::vector<std::string> notes;
  std::map<std::string, double> diagnostics;
};

/// Writes one CSV per figure into `out_dir`. Panels that need inputs the
/// settings do not provide (no historical emissions, no scenario variants)
/// are skipped with a note.
OutputRecord emit_figures(const Settings& settings, const std::filesystem::path& out_dir, int workers);

}  // namespace natscc
