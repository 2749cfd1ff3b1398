#pragma once

// Every dollar figure in this library is 2005 USD and every carbon figure is
// in tonnes of carbon (tC), never CO2. All unit conversions live here.
namespace natscc::units {

/// Atmospheric CO2: 1 ppm corresponds to 2.13 GtC.
inline constexpr double kGtcPerPpm = 2.13;

inline constexpr double kTonnesPerMegatonne = 1e6;
inline constexpr double kMegatonnesPerGigatonne = 1e3;
inline constexpr double kPersonsPerMillion = 1e6;

/// Impact functions are tabulated in percent of GDP.
inline constexpr double kPercent = 100.0;

}  // namespace natscc::units
