#pragma once

// Sensitivity grids over run settings: one-at-a-time (each axis varied with
// the others at their defaults) or the full Cartesian product.

#include <iosfwd>
#include <string>
#include <vector>

#include "natscc/keyvalue.hpp"
#include "natscc/liability.hpp"
#include "natscc/model.hpp"
#include "natscc/settings.hpp"

namespace natscc {

struct SensitivityAxis {
  /// One of Settings::axis_names().
  std::string name;
  std::vector<Value> values;
};

enum class GridMode { OneAtATime, Cartesian };

/// Axes declared under `[grid]` in the settings, in axis-name order.
std::vector<SensitivityAxis> grid_axes(const Settings& settings);
GridMode grid_mode(const Settings& settings);

struct GridPoint {
  std::size_t index = 0;
  std::string label;  // "default" or "axis=value;axis=value"
  Settings settings;
  std::string error;  // set when an axis value was rejected
};

/// Point 0 is always the base settings. Points whose effective settings equal
/// the base are dropped, so a one-at-a-time grid over k axes that each
/// contain the default has 1 + sum(n_i - 1) points.
std::vector<GridPoint> enumerate_grid(const std::vector<SensitivityAxis>& axes, const Settings& base,
                                      GridMode mode);

struct GridRow {
  std::size_t index = 0;
  std::string label;
  std::string config_hash;
  std::string status = "ok";  // or the error message
  SccTable scc;
  LiabilityReport liability;
  Eigen::ArrayXd income;  // per-capita income in the evaluation year
};

struct GridResult {
  std::vector<GridRow> rows;  // ordered by grid-point index
};

GridResult run_grid(const std::vector<SensitivityAxis>& axes, const Settings& base, GridMode mode,
                    int workers = 1);

/// Runs a single setting through the same path as a grid point.
GridRow run_point(const Settings& settings, ScenarioCache* cache = nullptr);

/// One row per (grid point, country):
/// point,label,config_hash,country,scc_usd2005_per_tc,net_liability_usd,net_liability_over_gdp
void write_sensitivity_csv(const GridResult& result, std::ostream& out);

/// One row per grid point:
/// point,label,config_hash,status,global_scc,sum_abs_net_liability_usd,max_harm_over_gdp
void write_grid_summary_csv(const GridResult& result, std::ostream& out);

}  // namespace natscc
