#include <doctest.h>

#include "natscc/climate.hpp"
#include "natscc/errors.hpp"
#include "support.hpp"

using namespace natscc;
namespace t = natscc::testing;

namespace {

double airborne(const CarbonCycleState<>& s) { return s.box_masses.sum(); }

std::vector<double> concentrations(const std::vector<double>& emissions) {
  const ClimateParams<> p;
  CarbonCycleState<> s;
  std::vector<double> out;
  for (double e : emissions) {
    s = step_carbon(s, p, e);
    out.push_back(s.concentration() - p.preindustrial_concentration);
  }
  return out;
}

}  // namespace

TEST_CASE("empty boxes with no emissions stay at preindustrial") {
  const ClimateParams<> p;
  CarbonCycleState<> s;
  const auto next = step_carbon(s, p, 0.0);
  CHECK(next.box_masses.isZero());
  CHECK(next.concentration() == p.preindustrial_concentration);
}

TEST_CASE("a 2.13 GtC pulse raises concentration by one ppm") {
  const ClimateParams<> p;
  const auto next = step_carbon(CarbonCycleState<>{}, p, 2.13);
  CHECK(next.concentration() - p.preindustrial_concentration == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("airborne fraction of a pulse decays to the permanent share") {
  const ClimateParams<> p;
  auto s = step_carbon(CarbonCycleState<>{}, p, 100.0);
  for (int year = 1; year <= 1000; ++year) s = step_carbon(s, p, 0.0);
  CHECK(t::relative_error(airborne(s) / 100.0, t::oracle()["airborne_fraction_1000y"]) < 1e-12);
  for (int year = 1001; year <= 10000; ++year) s = step_carbon(s, p, 0.0);
  CHECK(std::abs(airborne(s) / 100.0 - p.box_shares(0)) < 1e-6);
  CHECK(std::abs(airborne(s) / 100.0 - double(t::oracle()["airborne_fraction_10000y"])) < 1e-12);
}

TEST_CASE("equilibrium and lagged temperature") {
  const ClimateParams<> p;
  CHECK(equilibrium_temperature(p.preindustrial_concentration, p) == 0.0);
  CHECK(equilibrium_temperature(2.0 * p.preindustrial_concentration, p) == doctest::Approx(3.0).epsilon(1e-14));

  CarbonCycleState<> at_pre;
  const auto same = step_temperature(TemperatureState<>{0.0}, at_pre, p);
  CHECK(same.temperature == 0.0);

  CarbonCycleState<> doubled;
  doubled.box_masses(0) = p.preindustrial_concentration * units::kGtcPerPpm;
  TemperatureState<> temp{0.0};
  for (int year = 0; year < 40; ++year) temp = step_temperature(temp, doubled, p);
  CHECK(t::relative_error(temp.temperature, t::oracle()["warming_after_40y_cs3_efold40"]) < 1e-12);
}

TEST_CASE("temperature rejects implausible concentrations") {
  const ClimateParams<> p;
  CHECK_THROWS_AS(equilibrium_temperature(0.0, p), NumericalError);
  CHECK_THROWS_AS(equilibrium_temperature(0.4 * p.preindustrial_concentration, p), NumericalError);
}

TEST_CASE("parameter validation") {
  ClimateParams<> p;
  p.box_shares(0) = 0.2;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  ClimateParams<> q;
  q.climate_sensitivity = 0.0;
  CHECK_THROWS_AS(q.validate(), ConfigError);
  CHECK_THROWS_AS(initial_carbon_state(ClimateParams<>{}, 200.0), ConfigError);
}

TEST_CASE("carbon cycle is linear in emissions") {
  std::vector<double> a, b, sum;
  for (int k = 0; k < 300; ++k) {
    a.push_back(5.0 + 0.03 * k);
    b.push_back(k % 7 == 0 ? 20.0 : 0.5);
    sum.push_back(a.back() + b.back());
  }
  const auto ca = concentrations(a), cb = concentrations(b), cs = concentrations(sum);
  for (std::size_t k = 0; k < cs.size(); ++k) CHECK(t::relative_error(cs[k], ca[k] + cb[k]) <= 1e-9);
}

TEST_CASE("more emissions never mean lower concentration or temperature") {
  const ClimateParams<> p;
  CarbonCycleState<> low, high;
  TemperatureState<> tl, th;
  for (int k = 0; k < 400; ++k) {
    const double e = 8.0 + std::sin(0.1 * k);
    low = step_carbon(low, p, e);
    high = step_carbon(high, p, e + 0.5 * (k % 3));
    tl = step_temperature(tl, low, p);
    th = step_temperature(th, high, p);
    CHECK(high.concentration() >= low.concentration());
    CHECK(th.temperature >= tl.temperature);
  }
}
