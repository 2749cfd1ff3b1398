// natscc: command-line front end.
//
//   natscc <subcommand> [--config FILE] [--out DIR] [--set key=value]...
//
// Exit status: 0 success, 2 configuration or usage error, 3 data error,
// 4 numerical abort, 1 anything else.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <type_traits>
#include <vector>

#include "natscc/errors.hpp"
#include "natscc/reports.hpp"
#include "natscc/sensitivity.hpp"
#include "natscc/settings.hpp"

#ifndef NATSCC_VERSION
#define NATSCC_VERSION "0"
#endif

namespace fs = std::filesystem;
using namespace natscc;

namespace {

struct Invocation {
  std::string subcommand;
  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
};

class Session {
 public:
  Session(const Invocation& inv, Settings settings)
      : inv_(inv), settings_(std::move(settings)), dir_(inv.out_dir), workers_(worker_count()) {}

  const Settings& settings() const { return settings_; }
  int workers() const { return workers_; }
  OutputRecord& record() { return record_; }

  template <typename Fn>
  auto timed(const std::string& stage, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&] {
      timings_[stage] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      finish();
    } else {
      auto result = fn();
      finish();
      return result;
    }
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw DataError("cannot write " + (dir_ / name).string());
    body(out);
    record_.files.push_back(name);
  }

  void write_manifest(const std::string& status, const std::string& category = {},
                      const std::string& message = {}) const {
    nlohmann::ordered_json m;
    m["tool"] = "natscc";
    m["version"] = NATSCC_VERSION;
    m["subcommand"] = inv_.subcommand;
    m["status"] = status;
    if (!category.empty()) {
      m["error_category"] = category;
      m["error"] = message;
    }
    m["config_path"] = inv_.config_path;
    m["overrides"] = inv_.overrides;
    m["config_hash"] = settings_.hash();
    nlohmann::ordered_json effective;
    for (const auto& [key, value] : settings_.values()) effective[key] = value.to_string();
    m["settings"] = effective;
    m["workers"] = workers_;
    m["files"] = record_.files;
    m["notes"] = record_.notes;
    nlohmann::ordered_json diag = nlohmann::ordered_json::object();
    for (const auto& [key, value] : record_.diagnostics) diag[key] = value;
    m["diagnostics"] = diag;
    nlohmann::ordered_json timing = nlohmann::ordered_json::object();
    for (const auto& [key, value] : timings_) timing[key] = value;
    m["timings_seconds"] = timing;
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    out << m.dump(2) << '\n';
  }

 private:
  Invocation inv_;
  Settings settings_;
  fs::path dir_;
  int workers_;
  OutputRecord record_;
  std::map<std::string, double> timings_;
};

struct Baseline {
  RunSetup setup;
  WorldTrajectory traj;
  SccTable scc;
};

Baseline baseline(Session& session) {
  Baseline b;
  b.setup = session.timed("prepare", [&] { return prepare_run(session.settings()); });
  b.traj = session.timed("baseline", [&] { return run_baseline(*b.setup.scenario, b.setup.config); });
  b.scc = session.timed("scc", [&] {
    const auto rates = ramsey_rates(b.traj, b.setup.config.prtp, b.setup.config.emuc);
    return compute_scc(b.traj, rates, b.setup.config);
  });
  auto& diag = session.record().diagnostics;
  diag["global_scc"] = b.scc.global_scc;
  diag["last_decade_share"] = b.scc.last_decade_share;
  return b;
}

LiabilityReport liability(Session& session, const Baseline& b) {
  auto report = liability_report(b.scc, b.traj);
  session.record().diagnostics["max_harm_over_gdp"] = report.harm_over_gdp().maxCoeff();
  session.write("liability.csv", [&](std::ostream& out) { write_liability_csv(report, out); });
  return report;
}

void cmd_run(Session& s) {
  const auto b = baseline(s);
  s.write("trajectory_global.csv", [&](std::ostream& out) { write_trajectory_global_csv(b.traj, out); });
  s.write("trajectory_countries.csv", [&](std::ostream& out) { write_trajectory_countries_csv(b.traj, out); });
  s.write("scc.csv", [&](std::ostream& out) { write_scc_csv(b.scc, b.setup.config_hash, out); });
  liability(s, b);
  const auto eff = carbon_efficiency(b.traj, b.scc);
  s.write("carbon_efficiency.csv", [&](std::ostream& out) { write_carbon_efficiency_csv(eff, out); });
  for (const auto& id : eff.omitted) s.record().notes.push_back("carbon_efficiency.csv: " + id + " omitted, zero emissions");
  s.record().diagnostics["carbon_efficiency_violations"] = eff.violations;
  s.record().diagnostics["warming_linearity_r2"] =
      warming_linearity_r2(b.traj, b.traj.start_year, b.setup.config.horizon(*b.setup.scenario));
}

void cmd_scc(Session& s) {
  const auto b = baseline(s);
  s.write("scc.csv", [&](std::ostream& out) { write_scc_csv(b.scc, b.setup.config_hash, out); });
}

void cmd_scc_path(Session& s) {
  const auto setup = prepare_run(s.settings());
  std::vector<int> years;
  for (double y : s.settings().get("path_years").as_numbers("path_years")) years.push_back(static_cast<int>(y));
  if (years.empty()) throw ConfigError("path_years is empty");
  const auto path = s.timed("scc_path", [&] { return scc_path(*setup.scenario, setup.config, years); });
  s.write("scc_path.csv", [&](std::ostream& out) { write_scc_path_csv(path, setup.config_hash, out); });
}

void cmd_liability(Session& s) {
  const auto b = baseline(s);
  s.write("scc.csv", [&](std::ostream& out) { write_scc_csv(b.scc, b.setup.config_hash, out); });
  liability(s, b);
}

void cmd_debt(Session& s) {
  const std::string hist_path = s.settings().string("historical_emissions");
  if (hist_path.empty()) throw ConfigError("debt needs historical_emissions in the config");
  const auto setup = prepare_run(s.settings());
  const auto hist = load_historical_emissions(hist_path);
  const auto ledger = s.timed("debt", [&] { return historical_debt(*setup.scenario, setup.config, hist, s.workers()); });
  s.write("debt.csv", [&](std::ostream& out) { write_debt_csv(ledger, out); });
  s.write("marginal_debt.csv", [&](std::ostream& out) { write_marginal_debt_csv(ledger, out); });
  s.record().diagnostics["marginal_debt_first_year"] = ledger.marginal_debt(0);
}

void cmd_fit(Session& s) {
  const std::string meta = s.settings().string("meta_data");
  if (meta.empty()) throw ConfigError("fit needs meta_data in the config");
  const auto data = load_meta_dataset(meta);
  const auto fits = s.timed("fit", [&] { return fit_functions(data); });
  const auto bma = bma_weights(fits, data.size(), exact_fit_floor(data));
  for (const auto& fit : fits)
    if (!fit.converged) s.record().notes.push_back(std::string(form_name(fit.function.form)) + ": " + fit.message);
  s.write("fit_report.csv", [&](std::ostream& out) { write_fit_report(fits, bma, out); });
}

void cmd_sensitivity(Session& s) {
  const auto axes = grid_axes(s.settings());
  const auto result =
      s.timed("grid", [&] { return run_grid(axes, s.settings(), grid_mode(s.settings()), s.workers()); });
  for (const auto& row : result.rows)
    if (row.status != "ok") s.record().notes.push_back("grid point " + row.label + ": " + row.status);
  s.record().diagnostics["grid_points"] = static_cast<double>(result.rows.size());
  s.write("sensitivity.csv", [&](std::ostream& out) { write_sensitivity_csv(result, out); });
  s.write("grid_summary.csv", [&](std::ostream& out) { write_grid_summary_csv(result, out); });
}

void cmd_emit_figures(Session& s, const fs::path& dir) {
  auto record = s.timed("figures", [&] { return emit_figures(s.settings(), dir, s.workers()); });
  auto& mine = s.record();
  mine.files.insert(mine.files.end(), record.files.begin(), record.files.end());
  mine.notes.insert(mine.notes.end(), record.notes.begin(), record.notes.end());
  mine.diagnostics.insert(record.diagnostics.begin(), record.diagnostics.end());
}

int dispatch(const Invocation& inv) {
  Settings settings;
  std::unique_ptr<Session> session;
  auto fail = [&](const std::string& category, const std::exception& e, int code) {
    std::cerr << "natscc: " << category << " error: " << e.what() << '\n';
    try {
      if (!session) {
        fs::create_directories(inv.out_dir);
        session = std::make_unique<Session>(inv, settings);
      }
      session->write_manifest("error", category, e.what());
    } catch (...) {
    }
    return code;
  };
  try {
    if (!inv.config_path.empty()) settings = Settings::load(inv.config_path);
    for (const auto& o : inv.overrides) settings.apply_override(o);
    fs::create_directories(inv.out_dir);
    session = std::make_unique<Session>(inv, settings);
    Session& s = *session;
    const std::map<std::string, std::function<void()>> commands = {
        {"run", [&] { cmd_run(s); }},
        {"scc", [&] { cmd_scc(s); }},
        {"scc-path", [&] { cmd_scc_path(s); }},
        {"liability", [&] { cmd_liability(s); }},
        {"debt", [&] { cmd_debt(s); }},
        {"fit", [&] { cmd_fit(s); }},
        {"sensitivity", [&] { cmd_sensitivity(s); }},
        {"emit-figures", [&] { cmd_emit_figures(s, inv.out_dir); }},
    };
    commands.at(inv.subcommand)();
    s.write_manifest("ok");
    return 0;
  } catch (const ConfigError& e) {
    return fail("config", e, 2);
  } catch (const DataError& e) {
    return fail("data", e, 3);
  } catch (const NumericalError& e) {
    return fail("numerical", e, 4);
  } catch (const fs::filesystem_error& e) {
    return fail("data", e, 3);
  } catch (const std::exception& e) {
    return fail("internal", e, 1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"National social cost of carbon, climate liability and historical debt"};
  app.set_version_flag("--version", NATSCC_VERSION);
  app.require_subcommand(1, 1);

  Invocation inv;
  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"run", "baseline trajectory, SCC, liability and carbon efficiency"},
      {"scc", "national and global social cost of carbon"},
      {"scc-path", "SCC for each of path_years"},
      {"liability", "blame matrix and net liability"},
      {"debt", "historical debt for emissions 1960-2015"},
      {"fit", "fit impact functions to meta_data and report model-average weights"},
      {"sensitivity", "run the configured sensitivity grid"},
      {"emit-figures", "write plot data for every figure"},
  };
  for (const auto& [name, help] : subcommands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", inv.config_path, "run-config file");
    sub->add_option("-o,--out", inv.out_dir, "output directory")->capture_default_str();
    sub->add_option("-s,--set", inv.overrides, "override a config key (key=value), repeatable");
    sub->callback([&inv, name = name] { inv.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "natscc: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  return dispatch(inv);
}
