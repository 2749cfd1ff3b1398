#pragma once

// Five-box impulse-response carbon cycle feeding a one-lag temperature
// response. Everything is templated on the scalar type so the same stepping
// code runs on double or on Eigen's AutoDiffScalar.

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <limits>

#include "natscc/errors.hpp"
#include "natscc/units.hpp"

namespace natscc {

inline constexpr int kCarbonBoxes = 5;

template <typename Scalar>
using BoxVector = Eigen::Matrix<Scalar, kCarbonBoxes, 1>;

template <typename Scalar = double>
struct ClimateParams {
  Scalar climate_sensitivity{3.0};  // degC per doubling of CO2
  Scalar efolding_time{40.0};       // years
  BoxVector<Scalar> box_shares = (BoxVector<Scalar>() << 0.13, 0.20, 0.32, 0.25, 0.10).finished();
  /// Years; an infinite lifetime marks the box that never decays.
  BoxVector<Scalar> box_lifetimes =
      (BoxVector<Scalar>() << std::numeric_limits<double>::infinity(), 363.0, 74.0, 17.0, 2.0).finished();
  Scalar preindustrial_concentration{275.0};  // ppm

  void validate() const {
    using std::abs;
    if (!(climate_sensitivity > Scalar(0))) throw ConfigError("climate sensitivity must be > 0");
    if (!(efolding_time > Scalar(0))) throw ConfigError("e-folding time must be > 0");
    if (!(preindustrial_concentration > Scalar(0))) throw ConfigError("preindustrial concentration must be > 0");
    for (int j = 0; j < kCarbonBoxes; ++j) {
      if (!(box_shares(j) >= Scalar(0))) throw ConfigError("carbon box shares must be >= 0");
      if (!(box_lifetimes(j) > Scalar(0))) throw ConfigError("carbon box lifetimes must be > 0");
    }
    if (abs(box_shares.sum() - Scalar(1)) > Scalar(1e-12)) throw ConfigError("carbon box shares must sum to 1");
  }

  /// Fraction of each box surviving one year.
  BoxVector<Scalar> annual_retention() const {
    using std::exp;
    const Scalar never(std::numeric_limits<double>::infinity());
    BoxVector<Scalar> r;
    for (int j = 0; j < kCarbonBoxes; ++j)
      r(j) = box_lifetimes(j) == never ? Scalar(1) : exp(Scalar(-1) / box_lifetimes(j));
    return r;
  }
};

template <typename Scalar = double>
struct CarbonCycleState {
  BoxVector<Scalar> box_masses = BoxVector<Scalar>::Zero();  // GtC above preindustrial
  Scalar preindustrial_concentration{275.0};                 // ppm

  Scalar concentration() const {
    return preindustrial_concentration + box_masses.sum() / Scalar(units::kGtcPerPpm);
  }
};

template <typename Scalar = double>
struct TemperatureState {
  Scalar temperature{0.0};  // degC above preindustrial
};

/// Initial carbon state with the excess over preindustrial spread across the
/// boxes in proportion to their shares.
template <typename Scalar>
CarbonCycleState<Scalar> initial_carbon_state(const ClimateParams<Scalar>& params, Scalar concentration_ppm) {
  const Scalar excess = concentration_ppm - params.preindustrial_concentration;
  if (excess < Scalar(0)) throw ConfigError("initial concentration is below preindustrial");
  CarbonCycleState<Scalar> state;
  state.preindustrial_concentration = params.preindustrial_concentration;
  state.box_masses = params.box_shares * (excess * Scalar(units::kGtcPerPpm));
  return state;
}

/// One annual step: existing mass decays, then this year's emissions are
/// split across the boxes.
template <typename Scalar>
CarbonCycleState<Scalar> step_carbon(const CarbonCycleState<Scalar>& state, const ClimateParams<Scalar>& params,
                                     Scalar emissions_gtc) {
  CarbonCycleState<Scalar> next = state;
  next.box_masses = state.box_masses.cwiseProduct(params.annual_retention()) + params.box_shares * emissions_gtc;
  return next;
}

template <typename Scalar>
Scalar equilibrium_temperature(Scalar concentration_ppm, const ClimateParams<Scalar>& params) {
  using std::log;
  if (!(concentration_ppm > Scalar(0))) throw NumericalError("non-positive CO2 concentration");
  if (concentration_ppm < Scalar(0.5) * params.preindustrial_concentration)
    throw NumericalError("CO2 concentration below half of preindustrial");
  return params.climate_sensitivity * log(concentration_ppm / params.preindustrial_concentration) /
         Scalar(std::log(2.0));
}

/// Temperature relaxes towards equilibrium with the configured e-folding time.
template <typename Scalar>
TemperatureState<Scalar> step_temperature(const TemperatureState<Scalar>& t, const CarbonCycleState<Scalar>& state,
                                          const ClimateParams<Scalar>& params) {
  const Scalar target = equilibrium_temperature(state.concentration(), params);
  return {t.temperature + (target - t.temperature) / params.efolding_time};
}

}  // namespace natscc
