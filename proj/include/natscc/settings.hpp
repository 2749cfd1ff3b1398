#pragma once

// Run configuration as read from a key-value file plus command-line
// overrides, and its translation into a Scenario and RunConfig.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "natscc/keyvalue.hpp"
#include "natscc/model.hpp"
#include "natscc/scenario.hpp"

namespace natscc {

/// Effective settings. Every key has a default except `scenario`; unknown
/// keys are rejected. Path-valued keys are stored resolved against the
/// directory of the file they came from.
class Settings {
 public:
  Settings();

  static Settings load(const std::filesystem::path& path);

  /// Sets a key; throws ConfigError for unknown keys or mistyped values.
  void set(const std::string& key, const Value& value);
  /// Parses `key=value`.
  void apply_override(std::string_view assignment);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const Value& get(const std::string& key) const;
  const KeyValues& values() const { return values_; }

  double number(const std::string& key) const { return get(key).as_number(key); }
  int integer(const std::string& key) const { return get(key).as_int(key); }
  bool boolean(const std::string& key) const { return get(key).as_bool(key); }
  const std::string& string(const std::string& key) const { return get(key).as_string(key); }
  std::filesystem::path path(const std::string& key) const;

  /// `key = value` lines for every effective key, sorted. Path-valued keys
  /// render as a digest of the file contents so the text is independent of
  /// where the data lives.
  std::string canonical() const;
  /// 16 hex digits of FNV-1a over canonical().
  std::string hash() const;

  const std::filesystem::path& base_dir() const { return base_dir_; }
  void set_base_dir(std::filesystem::path dir) { base_dir_ = std::move(dir); }

  static bool is_path_key(std::string_view key);
  static const std::vector<std::string>& axis_names();

 private:
  KeyValues values_;
  std::filesystem::path base_dir_;
};

/// Maps a sensitivity-axis name to the settings key it varies.
std::string axis_key(std::string_view axis);

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 14695981039346656037ULL);
std::string hex64(std::uint64_t x);
std::string file_digest(const std::filesystem::path& path);

/// Thread-safe cache of loaded scenarios keyed by path.
class ScenarioCache {
 public:
  std::shared_ptr<const Scenario> get(const std::filesystem::path& path);

 private:
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const Scenario>> cache_;
};

struct RunSetup {
  std::shared_ptr<const Scenario> scenario;  // after any convergence transform
  RunConfig config;
  std::string impact_label;
  std::string config_hash;
};

RunSetup prepare_run(const Settings& settings, ScenarioCache* cache = nullptr);

/// Worker count from NATSCC_WORKERS, defaulting to hardware concurrency.
int worker_count();

}  // namespace natscc
