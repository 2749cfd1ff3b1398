#include "natscc/model.hpp"

#include <cmath>

#include "natscc/economy.hpp"
#include "natscc/units.hpp"

namespace natscc {

namespace {

struct ClimateSnapshot {
  CarbonCycleState<double> carbon;
  TemperatureState<double> temperature;
};

// Climate state at the end of year - 1.
ClimateSnapshot state_before(const WorldTrajectory& traj, const RunConfig& config, int year) {
  if (year == traj.start_year)
    return {initial_carbon_state(config.climate, config.initial_concentration), {config.initial_temperature}};
  const auto j = traj.column(year - 1);
  CarbonCycleState<double> carbon;
  carbon.preindustrial_concentration = config.climate.preindustrial_concentration;
  carbon.box_masses = traj.box_masses.col(j);
  return {carbon, {traj.temperature(j)}};
}

void check_impacts(const Eigen::ArrayXd& impact, const WorldTrajectory& traj, int year) {
  for (Eigen::Index c = 0; c < impact.size(); ++c)
    if (!(impact(c) > -1.0))
      throw NumericalError("impacts annihilate " + traj.countries[c] + " in " + std::to_string(year));
}

}  // namespace

void RunConfig::validate(const Scenario& s) const {
  if (!(prtp >= 0.0 && prtp <= 0.10)) throw ConfigError("prtp must lie in [0, 0.10]");
  if (!(emuc > 0.0 && emuc <= 5.0)) throw ConfigError("emuc must lie in (0, 5]");
  if (!(pulse_size > 0.0)) throw ConfigError("pulse_size must be > 0");
  climate.validate();
  impact.validate();
  if (!std::isfinite(downscaling.income_elasticity)) throw ConfigError("income elasticity must be finite");
  if (!s.contains(downscaling.calibration_year))
    throw ConfigError("calibration year " + std::to_string(downscaling.calibration_year) + " is outside the scenario");
  const int h = horizon(s);
  if (!s.contains(pulse_year)) throw ConfigError("pulse year " + std::to_string(pulse_year) + " is outside the scenario");
  if (!(pulse_year < h && h <= s.end_year))
    throw ConfigError("horizon year must satisfy pulse_year < horizon_year <= scenario end");
}

WorldTrajectory run_baseline(const Scenario& scenario, const RunConfig& config) {
  config.validate(scenario);
  const auto n = scenario.num_countries();
  const auto years = scenario.num_years();

  WorldTrajectory traj;
  traj.start_year = scenario.start_year;
  traj.end_year = scenario.end_year;
  for (const auto& c : scenario.countries) traj.countries.push_back(c.id);
  traj.box_masses.resize(kCarbonBoxes, years);
  traj.concentration.resize(years);
  traj.temperature.resize(years);
  traj.global_emissions.resize(years);
  traj.global_impact.resize(years);
  for (auto* panel : {&traj.population, &traj.income, &traj.gdp_gross, &traj.gdp_net, &traj.emissions,
                      &traj.impact_fraction, &traj.damage, &traj.vulnerability})
    panel->resize(n, years);

  const Eigen::ArrayXXd gdp = scenario.gdp();
  const auto cal_col = scenario.column(config.downscaling.calibration_year);
  const auto calibration = calibrate_vulnerability(scenario.income.col(cal_col), gdp.col(cal_col),
                                                   config.downscaling.income_elasticity);

  auto carbon = initial_carbon_state(config.climate, config.initial_concentration);
  TemperatureState<double> temperature{config.initial_temperature};
  const Eigen::ArrayXd no_impact = Eigen::ArrayXd::Zero(n);

  for (Eigen::Index j = 0; j < years; ++j) {
    const int year = scenario.start_year + static_cast<int>(j);
    const EconomyYear gross = advance_economy(scenario, year, no_impact);
    const double emissions_mtc = gross.emissions.sum();

    carbon = step_carbon(carbon, config.climate, emissions_mtc / units::kMegatonnesPerGigatonne);
    temperature = step_temperature(temperature, carbon, config.climate);
    const double global = evaluate_impact(config.impact, temperature.temperature);
    const Eigen::ArrayXd vulnerability = relative_vulnerability(calibration, gross.income_per_capita);
    const EconomyYear state = advance_economy(scenario, year, global * vulnerability);

    traj.box_masses.col(j) = carbon.box_masses;
    traj.concentration(j) = carbon.concentration();
    traj.temperature(j) = temperature.temperature;
    traj.global_emissions(j) = emissions_mtc;
    traj.global_impact(j) = global;
    traj.population.col(j) = state.population;
    traj.income.col(j) = state.income_per_capita;
    traj.gdp_gross.col(j) = state.gdp_gross;
    traj.gdp_net.col(j) = state.gdp_net;
    traj.emissions.col(j) = state.emissions;
    traj.impact_fraction.col(j) = state.impact_fraction;
    traj.damage.col(j) = -state.impact_fraction * state.gdp_gross;
    traj.vulnerability.col(j) = vulnerability;
  }
  return traj;
}

DiscountSchedule ramsey_rates(const WorldTrajectory& traj, double prtp, double emuc) {
  DiscountSchedule out;
  out.start_year = traj.start_year;
  const auto years = traj.num_years();
  out.rate.resize(traj.num_countries(), years);
  for (Eigen::Index j = 1; j < years; ++j)
    out.rate.col(j) = prtp + emuc * (traj.income.col(j) / traj.income.col(j - 1) - 1.0);
  if (years > 1) out.rate.col(0) = out.rate.col(1);
  else out.rate.col(0).setConstant(prtp);
  if (!(out.rate > -1.0).all()) throw NumericalError("Ramsey rate at or below -100%");
  return out;
}

Eigen::ArrayXXd DiscountSchedule::discount_factors(int base_year, int last_year) const {
  const auto n = rate.rows();
  Eigen::ArrayXXd out(n, last_year - base_year + 1);
  out.col(0).setOnes();
  for (int s = base_year + 1; s <= last_year; ++s)
    out.col(s - base_year) = out.col(s - base_year - 1) / (1.0 + rate.col(column(s)));
  return out;
}

Eigen::ArrayXXd DiscountSchedule::compound_factors(int first_year, int target_year) const {
  const auto n = rate.rows();
  const int width = target_year - first_year + 1;
  Eigen::ArrayXXd out(n, width);
  out.col(width - 1).setOnes();
  for (int s = target_year - 1; s >= first_year; --s)
    out.col(s - first_year) = out.col(s - first_year + 1) * (1.0 + rate.col(column(s + 1)));
  return out;
}

Eigen::ArrayXXd marginal_damages(const WorldTrajectory& base, const RunConfig& config, int pulse_year,
                                 int last_year, double pulse_mtc) {
  if (!base.contains(pulse_year) || !base.contains(last_year) || last_year < pulse_year)
    throw ConfigError("pulse window " + std::to_string(pulse_year) + "-" + std::to_string(last_year) +
                      " is outside the trajectory");
  if (!(pulse_mtc > 0.0)) throw ConfigError("pulse size must be > 0");

  auto [carbon, temperature] = state_before(base, config, pulse_year);
  const auto n = base.num_countries();
  Eigen::ArrayXXd out(n, last_year - pulse_year + 1);
  const double tonnes = pulse_mtc * units::kTonnesPerMegatonne;

  for (int year = pulse_year; year <= last_year; ++year) {
    const auto j = base.column(year);
    double emissions_mtc = base.global_emissions(j);
    if (year == pulse_year) emissions_mtc += pulse_mtc;
    carbon = step_carbon(carbon, config.climate, emissions_mtc / units::kMegatonnesPerGigatonne);
    temperature = step_temperature(temperature, carbon, config.climate);
    const double global = evaluate_impact(config.impact, temperature.temperature);
    const Eigen::ArrayXd impact = global * base.vulnerability.col(j);
    check_impacts(impact, base, year);
    const Eigen::ArrayXd damage = -impact * base.gdp_gross.col(j);
    out.col(year - pulse_year) = (damage - base.damage.col(j)) / tonnes;
  }
  return out;
}

SccTable compute_scc(const WorldTrajectory& base, const DiscountSchedule& rates, const RunConfig& config) {
  const int horizon = config.horizon_year == 0 ? base.end_year : config.horizon_year;
  const Eigen::ArrayXXd marginal = marginal_damages(base, config, config.pulse_year, horizon, config.pulse_size);
  const Eigen::ArrayXXd discount = rates.discount_factors(config.pulse_year, horizon);

  // Damages count from the year after the pulse.
  const Eigen::ArrayXXd pv = (marginal * discount).rightCols(marginal.cols() - 1);

  SccTable out;
  out.pulse_year = config.pulse_year;
  out.countries = base.countries;
  out.scc = pv.rowwise().sum();
  out.global_scc = out.scc.sum();
  const Eigen::Index tail = std::min<Eigen::Index>(10, pv.cols());
  out.last_decade_share = out.global_scc != 0.0 ? pv.rightCols(tail).sum() / out.global_scc : 0.0;
  return out;
}

SccTable compute_scc(const Scenario& scenario, const RunConfig& config) {
  const auto base = run_baseline(scenario, config);
  return compute_scc(base, ramsey_rates(base, config.prtp, config.emuc), config);
}

std::vector<SccTable> scc_path(const Scenario& scenario, const RunConfig& config, const std::vector<int>& years) {
  const auto base = run_baseline(scenario, config);
  const auto rates = ramsey_rates(base, config.prtp, config.emuc);
  std::vector<SccTable> out;
  out.reserve(years.size());
  for (int year : years) {
    RunConfig at = config;
    at.pulse_year = year;
    at.validate(scenario);
    out.push_back(compute_scc(base, rates, at));
  }
  return out;
}

Eigen::ArrayXd scc_growth(const SccTable& from, const SccTable& to) {
  const double span = to.pulse_year - from.pulse_year;
  if (span <= 0) throw ConfigError("SCC growth needs a later second pulse year");
  return (to.scc / from.scc).pow(1.0 / span) - 1.0;
}

}  // namespace natscc
