#include "natscc/sensitivity.hpp"

#include <filesystem>
#include <ostream>
#include <set>

#include "natscc/csv.hpp"
#include "natscc/errors.hpp"
#include "natscc/parallel.hpp"

namespace natscc {

namespace {

std::string value_label(const std::string& axis, const Value& v) {
  if (axis == "scenario" && v.kind == Value::Kind::String) return std::filesystem::path(v.text).stem().string();
  if (v.kind == Value::Kind::String) return v.text;
  return v.to_string();
}

}  // namespace

std::vector<SensitivityAxis> grid_axes(const Settings& settings) {
  std::vector<SensitivityAxis> axes;
  for (const auto& name : Settings::axis_names()) {
    const std::string key = "grid." + name;
    if (settings.has(key)) axes.push_back({name, settings.get(key).items});
  }
  return axes;
}

GridMode grid_mode(const Settings& settings) {
  return settings.string("grid.mode") == "cartesian" ? GridMode::Cartesian : GridMode::OneAtATime;
}

std::vector<GridPoint> enumerate_grid(const std::vector<SensitivityAxis>& axes, const Settings& base,
                                      GridMode mode) {
  for (const auto& axis : axes) {
    axis_key(axis.name);
    if (axis.values.empty()) throw ConfigError("sensitivity axis '" + axis.name + "' has no values");
  }

  std::vector<GridPoint> points;
  const std::string base_hash = base.hash();
  std::set<std::string> seen{base_hash};
  points.push_back({0, "default", base, {}});

  using Assignment = std::vector<std::pair<const SensitivityAxis*, const Value*>>;
  auto add = [&](const Assignment& assignment) {
    GridPoint p;
    p.settings = base;
    for (const auto& [axis, value] : assignment) {
      if (!p.label.empty()) p.label += ";";
      p.label += axis->name + "=" + value_label(axis->name, *value);
    }
    try {
      for (const auto& [axis, value] : assignment) p.settings.set(axis_key(axis->name), *value);
      if (!seen.insert(p.settings.hash()).second) return;
    } catch (const ConfigError& e) {
      p.error = e.what();
    }
    p.index = points.size();
    points.push_back(std::move(p));
  };

  if (mode == GridMode::OneAtATime) {
    for (const auto& axis : axes)
      for (const auto& value : axis.values) add({{&axis, &value}});
    return points;
  }

  std::vector<std::size_t> odometer(axes.size(), 0);
  if (axes.empty()) return points;
  while (true) {
    Assignment assignment;
    for (std::size_t a = 0; a < axes.size(); ++a) assignment.emplace_back(&axes[a], &axes[a].values[odometer[a]]);
    add(assignment);
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++odometer[a] < axes[a].values.size()) break;
      odometer[a] = 0;
      if (a == 0) return points;
    }
  }
}

GridRow run_point(const Settings& settings, ScenarioCache* cache) {
  GridRow row;
  row.config_hash = settings.hash();
  const RunSetup setup = prepare_run(settings, cache);
  const auto base = run_baseline(*setup.scenario, setup.config);
  const auto rates = ramsey_rates(base, setup.config.prtp, setup.config.emuc);
  row.scc = compute_scc(base, rates, setup.config);
  row.liability = liability_report(row.scc, base);
  row.income = base.income.col(base.column(setup.config.pulse_year));
  return row;
}

GridResult run_grid(const std::vector<SensitivityAxis>& axes, const Settings& base, GridMode mode, int workers) {
  const auto points = enumerate_grid(axes, base, mode);
  GridResult result;
  result.rows.resize(points.size());
  ScenarioCache cache;
  parallel_for(points.size(), workers, [&](std::size_t i) {
    const auto& point = points[i];
    GridRow row;
    if (point.error.empty()) {
      try {
        row = run_point(point.settings, &cache);
      } catch (const std::exception& e) {
        row.config_hash = point.settings.hash();
        row.status = e.what();
      }
    } else {
      row.status = point.error;
    }
    row.index = point.index;
    row.label = point.label;
    result.rows[i] = std::move(row);
  });
  return result;
}

void write_sensitivity_csv(const GridResult& result, std::ostream& out) {
  csv::write_header(out, {"point", "label", "config_hash", "country", "scc_usd2005_per_tc", "net_liability_usd",
                          "net_liability_over_gdp"});
  for (const auto& row : result.rows) {
    if (row.status != "ok") continue;
    const Eigen::ArrayXd over_gdp = row.liability.net_over_gdp();
    for (std::size_t c = 0; c < row.scc.countries.size(); ++c) {
      const auto i = static_cast<Eigen::Index>(c);
      out << row.index << ',' << row.label << ',' << row.config_hash << ',' << row.scc.countries[c] << ','
          << format_double(row.scc.scc(i)) << ',' << format_double(row.liability.net_liability(i)) << ','
          << format_double(over_gdp(i)) << '\n';
    }
  }
}

void write_grid_summary_csv(const GridResult& result, std::ostream& out) {
  csv::write_header(out, {"point", "label", "config_hash", "status", "global_scc", "sum_abs_net_liability_usd",
                          "max_harm_over_gdp"});
  for (const auto& row : result.rows) {
    std::string status = row.status;
    for (auto& ch : status)
      if (ch == ',' || ch == '\n') ch = ';';
    out << row.index << ',' << row.label << ',' << row.config_hash << ',' << status << ',';
    if (row.status == "ok") {
      out << format_double(row.scc.global_scc) << ',' << format_double(row.liability.net_liability.abs().sum())
          << ',' << format_double(row.liability.harm_over_gdp().maxCoeff());
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

}  // namespace natscc
