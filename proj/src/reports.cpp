#include "natscc/reports.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "natscc/csv.hpp"
#include "natscc/errors.hpp"
#include "natscc/sensitivity.hpp"
#include "natscc/units.hpp"

namespace natscc {

namespace {

std::string fmt(double x) { return format_double(x); }

struct SingleRun {
  RunSetup setup;
  WorldTrajectory traj;
  SccTable scc;
  LiabilityReport liability;
};

SingleRun run_single(const Settings& settings, ScenarioCache& cache) {
  SingleRun r;
  r.setup = prepare_run(settings, &cache);
  r.traj = run_baseline(*r.setup.scenario, r.setup.config);
  const auto rates = ramsey_rates(r.traj, r.setup.config.prtp, r.setup.config.emuc);
  r.scc = compute_scc(r.traj, rates, r.setup.config);
  r.liability = liability_report(r.scc, r.traj);
  return r;
}

class FigureWriter {
 public:
  FigureWriter(const std::filesystem::path& dir, OutputRecord& record) : dir_(dir), record_(record) {}

  std::ofstream open(const std::string& name, const std::vector<std::string>& columns) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    csv::write_header(out, columns);
    record_.files.push_back(name);
    return out;
  }

 private:
  std::filesystem::path dir_;
  OutputRecord& record_;
};

Value number_list(std::initializer_list<double> xs) {
  std::vector<Value> items;
  for (double x : xs) items.push_back(Value::of(x));
  return Value::array(std::move(items));
}

// Axis values for a sensitivity panel: the config's grid values if given,
// otherwise the panel's standard variants.
std::vector<Value> panel_values(const Settings& settings, const std::string& axis) {
  if (settings.has("grid." + axis)) return settings.get("grid." + axis).items;
  if (axis == "scenario") return settings.get("figures.scenario_variants").items;
  if (axis == "convergence") return {Value::of(false), Value::of(true)};
  if (axis == "prtp") return number_list({0.010, 0.015, 0.030}).items;
  if (axis == "emuc") return number_list({1.0, 1.5, 2.0}).items;
  if (axis == "impact_function")
    return {Value::of(std::string("threshold")), Value::of(std::string("bma")), Value::of(std::string("quadratic"))};
  if (axis == "impact_scale") return settings.get("figures.impact_scale_variants").items;
  if (axis == "income_elasticity") return number_list({0.36, 0.0, -0.36, -0.72, -1.44}).items;
  if (axis == "climate_sensitivity") return number_list({1.5, 3.0, 4.5}).items;
  return {};
}

void write_sensitivity_panels(const Settings& settings, const std::vector<std::string>& panels,
                              const std::string& name, FigureWriter& writer, OutputRecord& record, int workers) {
  std::vector<SensitivityAxis> axes;
  for (const auto& axis : panels) {
    auto values = panel_values(settings, axis);
    if (values.empty()) {
      record.notes.push_back(name + ": panel '" + axis + "' skipped, no variants configured");
      continue;
    }
    axes.push_back({axis, std::move(values)});
  }
  const auto grid = run_grid(axes, settings, GridMode::OneAtATime, workers);
  auto out = writer.open(name, {"panel", "variant", "country", "income_per_capita_usd2005", "net_liability_over_gdp"});
  const GridRow& def = grid.rows.front();
  if (def.status != "ok") throw DataError("default run failed: " + def.status);
  for (const auto& axis : axes) {
    auto emit = [&](const GridRow& row, const std::string& variant) {
      const Eigen::ArrayXd net = row.liability.net_over_gdp();
      for (std::size_t c = 0; c < row.scc.countries.size(); ++c) {
        const auto i = static_cast<Eigen::Index>(c);
        out << axis.name << ',' << variant << ',' << row.scc.countries[c] << ',' << fmt(row.income(i)) << ','
            << fmt(net(i)) << '\n';
      }
    };
    emit(def, "default");
    const std::string prefix = axis.name + "=";
    for (const auto& row : grid.rows) {
      if (row.label.rfind(prefix, 0) != 0) continue;
      if (row.status != "ok") {
        record.notes.push_back(name + ": " + row.label + " failed: " + row.status);
        continue;
      }
      emit(row, row.label.substr(prefix.size()));
    }
  }
}

}  // namespace

void write_scc_csv(const SccTable& scc, const std::string& config_hash, std::ostream& out) {
  csv::write_header(out, {"country", "scc_usd2005_per_tc", "pulse_year", "global_scc", "config_hash"});
  for (std::size_t c = 0; c < scc.countries.size(); ++c)
    out << scc.countries[c] << ',' << fmt(scc.scc(static_cast<Eigen::Index>(c))) << ',' << scc.pulse_year << ','
        << fmt(scc.global_scc) << ',' << config_hash << '\n';
}

void write_scc_path_csv(const std::vector<SccTable>& path, const std::string& config_hash, std::ostream& out) {
  csv::write_header(out, {"country", "pulse_year", "scc_usd2005_per_tc", "global_scc", "config_hash"});
  if (path.empty()) return;
  for (std::size_t c = 0; c < path.front().countries.size(); ++c)
    for (const auto& table : path)
      out << table.countries[c] << ',' << table.pulse_year << ',' << fmt(table.scc(static_cast<Eigen::Index>(c)))
          << ',' << fmt(table.global_scc) << ',' << config_hash << '\n';
}

void write_liability_csv(const LiabilityReport& report, std::ostream& out) {
  csv::write_header(out, {"country", "harm_done_usd", "damage_suffered_usd", "net_liability_usd",
                          "net_liability_over_gdp"});
  const Eigen::ArrayXd over = report.net_over_gdp();
  for (std::size_t c = 0; c < report.countries.size(); ++c) {
    const auto i = static_cast<Eigen::Index>(c);
    out << report.countries[c] << ',' << fmt(report.harm_done(i)) << ',' << fmt(report.damage_suffered(i)) << ','
        << fmt(report.net_liability(i)) << ',' << fmt(over(i)) << '\n';
  }
}

void write_debt_csv(const DebtLedger& ledger, std::ostream& out) {
  csv::write_header(out, {"country", "gross_debt_usd", "net_debt_usd"});
  for (std::size_t c = 0; c < ledger.countries.size(); ++c) {
    const auto i = static_cast<Eigen::Index>(c);
    out << ledger.countries[c] << ',' << fmt(ledger.gross_debt(i)) << ',' << fmt(ledger.net_debt(i)) << '\n';
  }
}

void write_marginal_debt_csv(const DebtLedger& ledger, std::ostream& out) {
  csv::write_header(out, {"emission_year", "marginal_debt_usd_per_tc"});
  for (std::size_t t = 0; t < ledger.emission_years.size(); ++t)
    out << ledger.emission_years[t] << ',' << fmt(ledger.marginal_debt(static_cast<Eigen::Index>(t))) << '\n';
}

void write_trajectory_global_csv(const WorldTrajectory& traj, std::ostream& out) {
  csv::write_header(out, {"year", "emissions_mtc", "concentration_ppm", "temperature_c", "global_impact_fraction",
                          "box1_gtc", "box2_gtc", "box3_gtc", "box4_gtc", "box5_gtc"});
  for (Eigen::Index t = 0; t < traj.num_years(); ++t) {
    out << traj.start_year + t << ',' << fmt(traj.global_emissions(t)) << ',' << fmt(traj.concentration(t)) << ','
        << fmt(traj.temperature(t)) << ',' << fmt(traj.global_impact(t));
    for (int j = 0; j < kCarbonBoxes; ++j) out << ',' << fmt(traj.box_masses(j, t));
    out << '\n';
  }
}

void write_trajectory_countries_csv(const WorldTrajectory& traj, std::ostream& out) {
  csv::write_header(out, {"country", "year", "population_millions", "income_per_capita_usd2005", "gdp_gross_usd",
                          "gdp_net_usd", "emissions_mtc", "impact_fraction", "damage_usd"});
  for (Eigen::Index c = 0; c < traj.num_countries(); ++c)
    for (Eigen::Index t = 0; t < traj.num_years(); ++t)
      out << traj.countries[c] << ',' << traj.start_year + t << ',' << fmt(traj.population(c, t)) << ','
          << fmt(traj.income(c, t)) << ',' << fmt(traj.gdp_gross(c, t)) << ',' << fmt(traj.gdp_net(c, t)) << ','
          << fmt(traj.emissions(c, t)) << ',' << fmt(traj.impact_fraction(c, t)) << ',' << fmt(traj.damage(c, t))
          << '\n';
}

CarbonEfficiency carbon_efficiency(const WorldTrajectory& traj, const SccTable& scc) {
  CarbonEfficiency table;
  table.year = scc.pulse_year;
  const auto t = traj.column(scc.pulse_year);
  for (Eigen::Index c = 0; c < traj.num_countries(); ++c) {
    const double tonnes = traj.emissions(c, t) * units::kTonnesPerMegatonne;
    if (!(tonnes > 0.0)) {
      table.omitted.push_back(traj.countries[c]);
      continue;
    }
    const double eff = traj.gdp_gross(c, t) / tonnes;
    table.countries.push_back(traj.countries[c]);
    table.efficiency.push_back(eff);
    table.scc.push_back(scc.scc(c));
    if (scc.scc(c) > eff) ++table.violations;
  }
  return table;
}

void write_carbon_efficiency_csv(const CarbonEfficiency& table, std::ostream& out) {
  csv::write_header(out, {"country", "carbon_efficiency_usd_per_tc", "scc_usd2005_per_tc", "scc_exceeds_efficiency"});
  for (std::size_t c = 0; c < table.countries.size(); ++c)
    out << table.countries[c] << ',' << fmt(table.efficiency[c]) << ',' << fmt(table.scc[c]) << ','
        << (table.scc[c] > table.efficiency[c] ? "true" : "false") << '\n';
}

double warming_linearity_r2(const WorldTrajectory& traj, int first_year, int last_year) {
  if (!traj.contains(first_year) || !traj.contains(last_year) || last_year - first_year < 2)
    throw ConfigError("warming regression needs at least three years inside the run");
  const auto a = traj.column(first_year);
  const auto n = last_year - first_year + 1;
  Eigen::ArrayXd cumulative(n);
  double running = 0.0;
  for (Eigen::Index t = 0; t <= a; ++t) running += traj.global_emissions(t);
  cumulative(0) = running;
  for (Eigen::Index k = 1; k < n; ++k) cumulative(k) = cumulative(k - 1) + traj.global_emissions(a + k);
  const Eigen::ArrayXd temp = traj.temperature.segment(a, n);
  const Eigen::ArrayXd x = cumulative - cumulative.mean();
  const Eigen::ArrayXd y = temp - temp.mean();
  const double sxx = x.square().sum();
  const double syy = y.square().sum();
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  const double sxy = (x * y).sum();
  return sxy * sxy / (sxx * syy);
}

OutputRecord emit_figures(const Settings& settings, const std::filesystem::path& out_dir, int workers) {
  OutputRecord record;
  FigureWriter writer(out_dir, record);
  ScenarioCache cache;
  const SingleRun base = run_single(settings, cache);
  const auto& countries = base.scc.countries;
  const auto n = static_cast<Eigen::Index>(countries.size());
  const auto year_col = base.traj.column(base.scc.pulse_year);
  const Eigen::ArrayXd income = base.traj.income.col(year_col);
  const Eigen::ArrayXd population = base.traj.population.col(year_col);

  {
    auto out = writer.open("fig_1_impact_functions.csv", {"function", "warming_c", "impact_pct_gdp"});
    const std::string meta = settings.string("meta_data");
    if (!meta.empty()) {
      const auto data = load_meta_dataset(meta);
      for (Eigen::Index i = 0; i < data.size(); ++i)
        out << "observed," << fmt(data.warming(i)) << ',' << fmt(data.impact_pct(i)) << '\n';
    }
    const BmaImpact& bma = base.setup.config.impact;
    for (int k = 0; k <= 60; ++k) {
      const double t = 0.1 * k;
      out << "model_average," << fmt(t) << ',' << fmt(units::kPercent * evaluate_impact(bma, t)) << '\n';
    }
    for (const auto& m : bma.members)
      for (int k = 0; k <= 60; ++k) {
        const double t = 0.1 * k;
        out << form_name(m.function.form) << ',' << fmt(t) << ','
            << fmt(units::kPercent * evaluate_impact(m.function, t)) << '\n';
      }
  }

  const Eigen::ArrayXd harm = base.liability.harm_over_gdp();
  const Eigen::ArrayXd damage = base.liability.damage_over_gdp();
  const Eigen::ArrayXd net = base.liability.net_over_gdp();
  {
    auto out = writer.open("fig_2_blame.csv", {"country", "harm_done_over_gdp", "damage_suffered_over_gdp"});
    for (Eigen::Index c = 0; c < n; ++c) out << countries[c] << ',' << fmt(harm(c)) << ',' << fmt(damage(c)) << '\n';
  }
  {
    auto out = writer.open("fig_3_net_liability_vs_income.csv",
                           {"country", "income_per_capita_usd2005", "net_liability_usd", "net_liability_over_gdp"});
    for (Eigen::Index c = 0; c < n; ++c)
      out << countries[c] << ',' << fmt(income(c)) << ',' << fmt(base.liability.net_liability(c)) << ','
          << fmt(net(c)) << '\n';
  }

  write_sensitivity_panels(settings, {"scenario", "convergence", "prtp", "emuc"}, "fig_4_sensitivity.csv", writer,
                           record, workers);
  write_sensitivity_panels(settings, {"impact_function", "impact_scale", "income_elasticity", "climate_sensitivity"},
                           "fig_5_sensitivity.csv", writer, record, workers);

  {
    const int late = settings.integer("figures.late_year");
    RunConfig late_config = base.setup.config;
    late_config.pulse_year = late;
    late_config.validate(*base.setup.scenario);
    const auto rates = ramsey_rates(base.traj, late_config.prtp, late_config.emuc);
    const auto late_scc = compute_scc(base.traj, rates, late_config);
    const auto late_liability = liability_report(late_scc, base.traj);
    const Eigen::ArrayXd late_net = late_liability.net_over_gdp();
    auto out = writer.open("fig_6_liability_2015_2055.csv",
                           {"country", "income_per_capita_usd2005", "year", "net_liability_over_gdp"});
    for (Eigen::Index c = 0; c < n; ++c) {
      out << countries[c] << ',' << fmt(income(c)) << ',' << base.scc.pulse_year << ',' << fmt(net(c)) << '\n';
      out << countries[c] << ',' << fmt(income(c)) << ',' << late << ',' << fmt(late_net(c)) << '\n';
    }
  }

  const std::string hist_path = settings.string("historical_emissions");
  if (hist_path.empty()) {
    record.notes.push_back("fig_7_debt.csv and fig_a9_marginal_debt.csv skipped: no historical_emissions configured");
  } else {
    const auto hist = load_historical_emissions(hist_path);
    const auto ledger = historical_debt(base.traj, base.setup.config, hist, workers);
    const auto debt_col = base.traj.column(DebtLedger::kDebtYear);
    {
      auto out = writer.open("fig_7_debt.csv", {"country", "income_per_capita_usd2005", "net_debt_over_gdp",
                                                "net_liability_over_gdp"});
      for (Eigen::Index c = 0; c < n; ++c)
        out << countries[c] << ',' << fmt(base.traj.income(c, debt_col)) << ','
            << fmt(ledger.net_debt(c) / base.traj.gdp_gross(c, debt_col)) << ',' << fmt(net(c)) << '\n';
    }
    {
      auto out = writer.open("fig_a9_marginal_debt.csv", {"emission_year", "marginal_debt_usd_per_tc"});
      for (std::size_t t = 0; t < ledger.emission_years.size(); ++t)
        out << ledger.emission_years[t] << ',' << fmt(ledger.marginal_debt(static_cast<Eigen::Index>(t))) << '\n';
    }
    record.diagnostics["marginal_debt_first_year"] = ledger.marginal_debt(0);
  }

  {
    auto out = writer.open("fig_a1_scc_vs_population.csv", {"country", "population_millions", "scc_usd2005_per_tc"});
    for (Eigen::Index c = 0; c < n; ++c)
      out << countries[c] << ',' << fmt(population(c)) << ',' << fmt(base.scc.scc(c)) << '\n';
  }
  {
    std::vector<SccTable> tables;
    const std::vector<double> elasticities{-0.36, 0.0, 0.36};
    for (double eps : elasticities) {
      Settings variant = settings;
      variant.set("income_elasticity", Value::of(eps));
      tables.push_back(run_single(variant, cache).scc);
    }
    auto out = writer.open("fig_a2_scc_vs_income.csv",
                           {"country", "income_elasticity", "income_per_capita_usd2005", "scc_usd2005_per_tc"});
    for (Eigen::Index c = 0; c < n; ++c)
      for (std::size_t k = 0; k < tables.size(); ++k)
        out << countries[c] << ',' << fmt(elasticities[k]) << ',' << fmt(income(c)) << ','
            << fmt(tables[k].scc(c)) << '\n';
  }
  {
    const auto eff = carbon_efficiency(base.traj, base.scc);
    auto out = writer.open("fig_a3_carbon_efficiency.csv", {"country", "carbon_efficiency_usd_per_tc",
                                                            "scc_usd2005_per_tc", "scc_exceeds_efficiency"});
    for (std::size_t c = 0; c < eff.countries.size(); ++c)
      out << eff.countries[c] << ',' << fmt(eff.efficiency[c]) << ',' << fmt(eff.scc[c]) << ','
          << (eff.scc[c] > eff.efficiency[c] ? "true" : "false") << '\n';
    for (const auto& id : eff.omitted)
      record.notes.push_back("fig_a3_carbon_efficiency.csv: " + id + " omitted, zero emissions");
    record.diagnostics["carbon_efficiency_violations"] = eff.violations;
  }
  {
    auto out = writer.open("fig_a4_harm_vs_income.csv",
                           {"country", "income_per_capita_usd2005", "harm_done_usd", "harm_done_over_gdp"});
    for (Eigen::Index c = 0; c < n; ++c)
      out << countries[c] << ',' << fmt(income(c)) << ',' << fmt(base.liability.harm_done(c)) << ','
          << fmt(harm(c)) << '\n';
  }
  {
    auto out = writer.open("fig_a5_damage_vs_income.csv",
                           {"country", "income_per_capita_usd2005", "damage_suffered_usd", "damage_suffered_over_gdp"});
    for (Eigen::Index c = 0; c < n; ++c)
      out << countries[c] << ',' << fmt(income(c)) << ',' << fmt(base.liability.damage_suffered(c)) << ','
          << fmt(damage(c)) << '\n';
  }
  {
    const Eigen::ArrayXd emissions = base.traj.emissions.col(year_col);
    const Eigen::ArrayXd gap = share_gap(base.scc.scc, emissions);
    auto out = writer.open("fig_a6_shares.csv", {"country", "income_per_capita_usd2005", "emission_share",
                                                 "scc_share", "share_gap"});
    for (Eigen::Index c = 0; c < n; ++c)
      out << countries[c] << ',' << fmt(income(c)) << ',' << fmt(emissions(c) / emissions.sum()) << ','
          << fmt(base.scc.scc(c) / base.scc.scc.sum()) << ',' << fmt(gap(c)) << '\n';
  }
  {
    Settings off = settings;
    off.set("convergence", Value::of(false));
    Settings on = settings;
    on.set("convergence", Value::of(true));
    const auto scc_off = run_single(off, cache).scc;
    const auto scc_on = run_single(on, cache).scc;
    auto out = writer.open("fig_a7_convergence_delta.csv",
                           {"country", "income_per_capita_usd2005", "scc_convergence_off", "scc_convergence_on",
                            "scc_difference"});
    for (Eigen::Index c = 0; c < n; ++c)
      out << countries[c] << ',' << fmt(income(c)) << ',' << fmt(scc_off.scc(c)) << ',' << fmt(scc_on.scc(c)) << ','
          << fmt(scc_on.scc(c) - scc_off.scc(c)) << '\n';
  }
  {
    const auto years = settings.get("path_years").as_numbers("path_years");
    if (years.size() < 2) throw ConfigError("path_years needs at least two years");
    const int first = static_cast<int>(years.front());
    const int last = static_cast<int>(years.back());
    const auto path = scc_path(*base.setup.scenario, base.setup.config, {first, last});
    const Eigen::ArrayXd growth = scc_growth(path.front(), path.back());
    auto out = writer.open("fig_a8_scc_growth.csv", {"country", "income_per_capita_usd2005", "scc_first_year",
                                                     "scc_last_year", "annual_growth"});
    for (Eigen::Index c = 0; c < n; ++c)
      out << countries[c] << ',' << fmt(income(c)) << ',' << fmt(path.front().scc(c)) << ','
          << fmt(path.back().scc(c)) << ',' << fmt(growth(c)) << '\n';
  }

  record.diagnostics["global_scc"] = base.scc.global_scc;
  record.diagnostics["max_harm_over_gdp"] = harm.maxCoeff();
  record.diagnostics["last_decade_share"] = base.scc.last_decade_share;
  return record;
}

}  // namespace natscc
