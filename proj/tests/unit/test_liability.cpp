#include <doctest.h>

#include "natscc/errors.hpp"
#include "natscc/liability.hpp"
#include "support.hpp"

using namespace natscc;
namespace t = natscc::testing;

namespace {

Eigen::ArrayXd array(std::initializer_list<double> values) {
  Eigen::ArrayXd out(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double v : values) out(k++) = v;
  return out;
}

LiabilityReport toy_report() {
  return blame_matrix({"AAA", "BBB"}, array({1.0, 3.0}), array({10.0, 5.0}), array({100.0, 50.0}), 2015);
}

LiabilityReport default_report() {
  const auto setup = prepare_run(t::default_settings());
  const auto traj = run_baseline(*setup.scenario, setup.config);
  return liability_report(compute_scc(traj, ramsey_rates(traj, setup.config.prtp, setup.config.emuc), setup.config),
                          traj);
}

}  // namespace

TEST_CASE("two-country blame matrix by hand") {
  const auto r = toy_report();
  CHECK(r.harm_done(0) == 30.0);
  CHECK(r.damage_suffered(0) == 5.0);
  CHECK(r.harm_done(1) == 5.0);
  CHECK(r.damage_suffered(1) == 30.0);
  CHECK(r.net_liability(0) == 25.0);
  CHECK(r.net_liability(1) == -25.0);
  CHECK(r.net_over_gdp()(0) == 0.25);
}

TEST_CASE("a lone country owes and is owed nothing") {
  const auto r = blame_matrix({"AAA"}, array({4.0}), array({7.0}), array({1.0}), 2015);
  CHECK(r.harm_done(0) == 0.0);
  CHECK(r.damage_suffered(0) == 0.0);
  CHECK(r.net_liability(0) == 0.0);
}

TEST_CASE("net liabilities sum to zero") {
  const auto r = default_report();
  CHECK(std::abs(r.net_liability.sum()) <= 1e-9 * r.harm_done.abs().sum());
}

TEST_CASE("net liability has the sign of the emission share minus the SCC share") {
  const Eigen::ArrayXd scc = array({2.0, 9.0, 0.5, 4.0});
  const Eigen::ArrayXd m = array({1e6, 2e5, 3e6, 1e6});
  const auto r = blame_matrix({"A", "B", "C", "D"}, scc, m, Eigen::ArrayXd::Ones(4), 2015);
  const Eigen::ArrayXd gap = share_gap(scc, m);
  for (Eigen::Index c = 0; c < 4; ++c) CHECK((r.net_liability(c) > 0.0) == (gap(c) > 0.0));

}

TEST_CASE("harm and damage exclude each country's own terms") {
  const Eigen::ArrayXd scc = array({2.0, 9.0, 0.5});
  const Eigen::ArrayXd m = array({4.0, 1.0, 6.0});
  const auto r = blame_matrix({"A", "B", "C"}, scc, m, Eigen::ArrayXd::Ones(3), 2015);
  for (Eigen::Index c = 0; c < 3; ++c) {
    CHECK(r.harm_done(c) == doctest::Approx(m(c) * scc.sum() - m(c) * scc(c)));
    CHECK(r.damage_suffered(c) == doctest::Approx(scc(c) * m.sum() - scc(c) * m(c)));
    CHECK(r.net_liability(c) == doctest::Approx(m(c) * scc.sum() - scc(c) * m.sum()));
  }
}

TEST_CASE("scaling SCCs scales liabilities") {
  const auto a = toy_report();
  const auto b = blame_matrix({"AAA", "BBB"}, 7.0 * array({1.0, 3.0}), array({10.0, 5.0}), array({100.0, 50.0}), 2015);
  CHECK(((b.net_liability - 7.0 * a.net_liability).abs() <= 1e-12).all());
}

TEST_CASE("blame matrix input checks") {
  CHECK_THROWS_AS(blame_matrix({"A", "B"}, array({1.0}), array({1.0, 2.0}), array({1.0, 1.0}), 2015), DataError);
  CHECK_THROWS_AS(blame_matrix({"A", "B"}, array({1.0, 2.0}), array({1.0, 2.0}), array({1.0, 0.0}), 2015),
                  DataError);
}

namespace {

struct DebtRun {
  WorldTrajectory traj;
  RunConfig config;
  HistoricalEmissions hist;
  DebtLedger ledger;
};

const DebtRun& debt_run() {
  static const DebtRun run = [] {
    const Settings s = t::default_settings();
    const auto setup = prepare_run(s);
    DebtRun r;
    r.config = setup.config;
    r.traj = run_baseline(*setup.scenario, r.config);
    r.hist = load_historical_emissions(s.path("historical_emissions"));
    r.ledger = historical_debt(r.traj, r.config, r.hist, 4);
    return r;
  }();
  return run;
}

}  // namespace

TEST_CASE("marginal debt rises the further back the emission") {
  const auto& d = debt_run().ledger;
  REQUIRE(d.marginal_debt.size() == 56);
  CHECK(d.emission_years.front() == 1960);
  CHECK(d.emission_years.back() == 2015);
  for (Eigen::Index k = 1; k < d.marginal_debt.size(); ++k) CHECK(d.marginal_debt(k - 1) > d.marginal_debt(k));
}

TEST_CASE("debt for 2015 emissions is that year's marginal damage") {
  const auto& r = debt_run();
  const Eigen::ArrayXXd same_year = marginal_damages(r.traj, r.config, 2015, 2015, r.config.pulse_size);
  const Eigen::ArrayXd last = r.ledger.marginal_by_country.rightCols(1);
  CHECK(((last - same_year.col(0)).abs() <= 1e-12 * same_year.abs().maxCoeff()).all());
}

TEST_CASE("a country that never emitted has done no harm") {
  const auto& r = debt_run();
  HistoricalEmissions hist = r.hist;
  hist.emissions.row(0).setZero();
  const auto ledger = historical_debt(r.traj, r.config, hist, 2);
  CHECK(ledger.gross_harm(0) == 0.0);
  CHECK(ledger.net_debt(0) < 0.0);
}

TEST_CASE("net historical debt sums to zero") {
  const auto& d = debt_run().ledger;
  CHECK(std::abs(d.net_debt.sum()) <= 1e-9 * d.gross_harm.sum());
  CHECK((d.gross_debt > 0.0).all());
}

TEST_CASE("worker count does not change the ledger") {
  const auto& r = debt_run();
  const auto serial = historical_debt(r.traj, r.config, r.hist, 1);
  CHECK((serial.marginal_by_country == r.ledger.marginal_by_country).all());
  CHECK((serial.net_debt == r.ledger.net_debt).all());
}

TEST_CASE("historical emissions must match the scenario") {
  const auto& r = debt_run();
  HistoricalEmissions hist = r.hist;
  hist.countries[0] = "ZZZ";
  CHECK_THROWS_AS(historical_debt(r.traj, r.config, hist), DataError);
}
