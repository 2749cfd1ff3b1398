#include "natscc/settings.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include "natscc/errors.hpp"

namespace natscc {

namespace {

Value numbers(std::initializer_list<double> xs) {
  std::vector<Value> items;
  for (double x : xs) items.push_back(Value::of(x));
  return Value::array(std::move(items));
}

const KeyValues& defaults() {
  static const KeyValues table = [] {
    KeyValues d;
    const double inf = std::numeric_limits<double>::infinity();
    d["historical_emissions"] = Value::of(std::string());
    d["meta_data"] = Value::of(std::string());
    d["convergence_horizon"] = Value::of(0.0);
    d["prtp"] = Value::of(0.015);
    d["emuc"] = Value::of(1.5);
    d["income_elasticity"] = Value::of(-0.36);
    d["calibration_year"] = Value::of(2010.0);
    d["climate_sensitivity"] = Value::of(3.0);
    d["efolding_time"] = Value::of(40.0);
    d["box_shares"] = numbers({0.13, 0.20, 0.32, 0.25, 0.10});
    d["box_lifetimes"] = numbers({inf, 363.0, 74.0, 17.0, 2.0});
    d["preindustrial_concentration"] = Value::of(275.0);
    d["initial_concentration"] = Value::of(310.0);
    d["initial_temperature"] = Value::of(0.25);
    d["impact"] = Value::of(std::string("bma"));
    d["impact_scale"] = Value::of(1.0);
    d["pulse_year"] = Value::of(2015.0);
    d["pulse_size"] = Value::of(10.0);
    d["horizon_year"] = Value::of(0.0);
    d["path_years"] = numbers({2015.0, 2055.0});
    d["grid.mode"] = Value::of(std::string("one_at_a_time"));
    d["figures.impact_scale_variants"] = numbers({0.5, 1.0, 1.5});
    d["figures.scenario_variants"] = Value::array({});
    d["figures.late_year"] = Value::of(2055.0);
    return d;
  }();
  return table;
}

// Keys without a default that may still be set.
bool is_optional_key(std::string_view key) { return key == "scenario" || key == "convergence"; }

const std::map<std::string, std::string, std::less<>>& axis_table() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"scenario", "scenario"},
      {"convergence", "convergence"},
      {"prtp", "prtp"},
      {"emuc", "emuc"},
      {"income_elasticity", "income_elasticity"},
      {"climate_sensitivity", "climate_sensitivity"},
      {"impact_function", "impact"},
      {"impact_scale", "impact_scale"},
  };
  return table;
}

void check_type(const std::string& key, const Value& value) {
  if (key == "convergence") {
    value.as_bool(key);
  } else if (key == "grid.mode") {
    const auto& mode = value.as_string(key);
    if (mode != "one_at_a_time" && mode != "cartesian")
      throw ConfigError("grid.mode must be one_at_a_time or cartesian");
  } else if (key.rfind("grid.", 0) == 0) {
    if (value.kind != Value::Kind::Array || value.items.empty())
      throw ConfigError("grid axis '" + key + "' needs a non-empty array of values");
    const std::string inner = axis_key(key.substr(5));
    for (const auto& item : value.items) check_type(inner, item);
  } else if (key == "scenario" || key == "figures.scenario_variants") {
    if (key == "scenario") value.as_string(key);
    else
      for (const auto& item : value.items) item.as_string(key);
  } else {
    const auto& d = defaults().at(key);
    if (d.kind != value.kind) throw ConfigError("key '" + key + "' has the wrong type (expected like " +
                                                d.to_string() + ")");
    if (d.kind == Value::Kind::Array)
      for (const auto& item : value.items) item.as_number(key);
  }
}

}  // namespace

const std::vector<std::string>& Settings::axis_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, key] : axis_table()) out.push_back(name);
    return out;
  }();
  return names;
}

std::string axis_key(std::string_view axis) {
  auto it = axis_table().find(axis);
  if (it == axis_table().end()) throw ConfigError("unknown sensitivity axis '" + std::string(axis) + "'");
  return it->second;
}

bool Settings::is_path_key(std::string_view key) {
  return key == "scenario" || key == "historical_emissions" || key == "meta_data";
}

Settings::Settings() : values_(defaults()), base_dir_(std::filesystem::current_path()) {}

Settings Settings::load(const std::filesystem::path& path) {
  Settings s;
  s.base_dir_ = std::filesystem::absolute(path).parent_path();
  for (const auto& [key, value] : load_key_values(path)) s.set(key, value);
  return s;
}

void Settings::set(const std::string& key, const Value& raw) {
  const bool known = defaults().count(key) || is_optional_key(key) ||
                     (key.rfind("grid.", 0) == 0 && key != "grid.mode" && axis_table().count(key.substr(5)));
  if (!known) throw ConfigError("unknown config key '" + key + "'");
  Value value = raw;
  check_type(key, value);
  auto resolve = [&](Value& v) {
    if (v.kind == Value::Kind::String && !v.text.empty()) {
      std::filesystem::path p(v.text);
      if (p.is_relative()) p = base_dir_ / p;
      v.text = p.lexically_normal().string();
    }
  };
  if (is_path_key(key)) resolve(value);
  if (key == "grid.scenario" || key == "figures.scenario_variants")
    for (auto& item : value.items) resolve(item);
  values_[key] = std::move(value);
}

void Settings::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) throw ConfigError("override '" + std::string(assignment) +
                                                                 "' is not key=value");
  std::string key(assignment.substr(0, eq));
  key.erase(key.find_last_not_of(' ') + 1);
  // Relative paths on the command line are relative to the working directory.
  const auto saved = base_dir_;
  base_dir_ = std::filesystem::current_path();
  try {
    set(key, parse_value(assignment.substr(eq + 1)));
  } catch (...) {
    base_dir_ = saved;
    throw;
  }
  base_dir_ = saved;
}

const Value& Settings::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing required config key '" + key + "'");
  return it->second;
}

std::filesystem::path Settings::path(const std::string& key) const { return string(key); }

std::string Settings::canonical() const {
  std::ostringstream out;
  for (const auto& [key, value] : values_) {
    out << key << " = ";
    auto render = [&](const Value& v) {
      if (v.kind == Value::Kind::String && !v.text.empty()) return "sha:" + file_digest(v.text);
      return v.to_string();
    };
    if (is_path_key(key)) {
      out << render(value);
    } else if (key == "grid.scenario" || key == "figures.scenario_variants") {
      out << '[';
      for (std::size_t i = 0; i < value.items.size(); ++i) out << (i ? ", " : "") << render(value.items[i]);
      out << ']';
    } else {
      out << value.to_string();
    }
    out << '\n';
  }
  return out.str();
}

std::string Settings::hash() const { return hex64(fnv1a(canonical())); }

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, x >>= 4) out[i] = digits[x & 0xF];
  return out;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "missing";
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::uint64_t h = fnv1a(bytes);
  // The scenario sidecar is part of the scenario.
  auto sidecar = path;
  sidecar.replace_extension(".toml");
  if (sidecar != path) {
    std::ifstream side(sidecar, std::ios::binary);
    if (side) h = fnv1a(std::string((std::istreambuf_iterator<char>(side)), std::istreambuf_iterator<char>()), h);
  }
  return hex64(h);
}

std::shared_ptr<const Scenario> ScenarioCache::get(const std::filesystem::path& path) {
  std::lock_guard lock(mutex_);
  auto& slot = cache_[path.string()];
  if (!slot) slot = std::make_shared<const Scenario>(load_scenario(path));
  return slot;
}

RunSetup prepare_run(const Settings& settings, ScenarioCache* cache) {
  if (!settings.has("scenario")) throw ConfigError("config does not name a scenario");
  const auto scenario_path = settings.path("scenario");
  std::shared_ptr<const Scenario> scenario =
      cache ? cache->get(scenario_path) : std::make_shared<const Scenario>(load_scenario(scenario_path));

  const bool converge = settings.has("convergence") ? settings.boolean("convergence") : scenario->convergence;
  if (converge) {
    const int horizon = settings.integer("convergence_horizon");
    scenario = std::make_shared<const Scenario>(
        apply_convergence(*scenario, horizon > 0 ? horizon : scenario->end_year - scenario->start_year));
  } else if (scenario->convergence) {
    auto copy = std::make_shared<Scenario>(*scenario);
    copy->convergence = false;
    scenario = copy;
  }

  RunSetup out;
  out.scenario = scenario;
  auto& config = out.config;
  config.scenario_id = scenario->id;
  config.prtp = settings.number("prtp");
  config.emuc = settings.number("emuc");
  config.downscaling.income_elasticity = settings.number("income_elasticity");
  config.downscaling.calibration_year = settings.integer("calibration_year");
  config.climate.climate_sensitivity = settings.number("climate_sensitivity");
  config.climate.efolding_time = settings.number("efolding_time");
  const auto shares = settings.get("box_shares").as_numbers("box_shares");
  const auto lifetimes = settings.get("box_lifetimes").as_numbers("box_lifetimes");
  if (shares.size() != kCarbonBoxes || lifetimes.size() != kCarbonBoxes)
    throw ConfigError("box_shares and box_lifetimes need exactly 5 values");
  for (int j = 0; j < kCarbonBoxes; ++j) {
    config.climate.box_shares(j) = shares[j];
    config.climate.box_lifetimes(j) = lifetimes[j];
  }
  config.climate.preindustrial_concentration = settings.number("preindustrial_concentration");
  config.initial_concentration = settings.number("initial_concentration");
  config.initial_temperature = settings.number("initial_temperature");
  config.pulse_year = settings.integer("pulse_year");
  config.pulse_size = settings.number("pulse_size");
  config.horizon_year = settings.integer("horizon_year");

  const std::string impact = settings.string("impact");
  const double scale = settings.number("impact_scale");
  const std::string meta = settings.string("meta_data");
  std::vector<FitResult> fits;
  BmaImpact bma = published_bma();
  if (!meta.empty()) {
    const auto data = load_meta_dataset(meta);
    fits = fit_functions(data);
    bma = bma_weights(fits, data.size(), exact_fit_floor(data));
  }
  if (impact == "bma") {
    config.impact = bma;
  } else {
    const auto form = parse_form(impact);
    if (!form) throw ConfigError("unknown impact function '" + impact + "'");
    ImpactFunction f = published_function(*form);
    for (const auto& fit : fits)
      if (fit.function.form == *form && fit.converged) f = fit.function;
    config.impact = BmaImpact::single(f);
  }
  config.impact.scale = scale;
  config.validate(*scenario);

  out.impact_label = impact;
  out.config_hash = settings.hash();
  return out;
}

int worker_count() {
  if (const char* env = std::getenv("NATSCC_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace natscc
