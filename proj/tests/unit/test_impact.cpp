#include <doctest.h>

#include <sstream>

#include "natscc/errors.hpp"
#include "natscc/impact.hpp"
#include "support.hpp"

using namespace natscc;
namespace t = natscc::testing;

namespace {

MetaDataset dataset(const std::vector<double>& ts, const std::vector<double>& ys) {
  MetaDataset d;
  d.warming = Eigen::Map<const Eigen::VectorXd>(ts.data(), static_cast<Eigen::Index>(ts.size()));
  d.impact_pct = Eigen::Map<const Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size()));
  return d;
}

const FitResult& find(const std::vector<FitResult>& fits, ImpactForm form) {
  for (const auto& f : fits)
    if (f.function.form == form) return f;
  throw std::runtime_error("form missing");
}

}  // namespace

TEST_CASE("published point values") {
  CHECK(std::abs(evaluate_impact(published_function(ImpactForm::Parabolic), 1.0) - (-0.00532)) <= 1e-12);
  CHECK(std::abs(evaluate_impact(published_function(ImpactForm::Linear), 2.0) - (-0.0158)) <= 1e-12);
  CHECK(evaluate_impact(published_function(ImpactForm::Threshold), -0.30) == 0.0);
  CHECK(evaluate_impact(published_function(ImpactForm::Quadratic), 0.0) == 0.0);
}

TEST_CASE("every form is finite on the supported range") {
  for (ImpactForm form : kAllImpactForms)
    for (double temp = kMinWarming; temp <= kMaxWarming; temp += 0.05)
      CHECK(std::isfinite(evaluate_impact(published_function(form), temp)));
  CHECK_THROWS_AS(evaluate_impact(published_function(ImpactForm::Linear), 10.5), NumericalError);
  CHECK_THROWS_AS(evaluate_impact(published_function(ImpactForm::Linear), -1.5), NumericalError);
}

TEST_CASE("piecewise linear assigns the printed gap to the first branch") {
  const auto f = published_function(ImpactForm::PiecewiseLinear);
  CHECK(evaluate_impact(f, 0.80) == doctest::Approx(0.46 * 0.80 / 100.0));
  CHECK(evaluate_impact(f, 1.50) == doctest::Approx((0.46 * 0.74 - 0.90 * 1.50) / 100.0));
}

TEST_CASE("cubic and quartic use their named powers") {
  CHECK(evaluate_impact(published_function(ImpactForm::Cubic), 2.0) == doctest::Approx(-0.028 * 8.0 / 100.0));
  CHECK(evaluate_impact(published_function(ImpactForm::Quartic), 2.0) == doctest::Approx(-0.0039 * 16.0 / 100.0));
}

TEST_CASE("form names round-trip") {
  for (ImpactForm form : kAllImpactForms) CHECK(parse_form(form_name(form)) == form);
  CHECK_FALSE(parse_form("nordhaus").has_value());
}

TEST_CASE("model average is the weighted sum of its members") {
  const BmaImpact bma = published_bma();
  CHECK_NOTHROW(bma.validate());
  for (double temp : {-0.5, 0.3, 1.0, 2.5, 4.0, 7.0}) {
    double manual = 0.0;
    for (const auto& m : bma.members) manual += m.weight * evaluate_impact(m.function, temp);
    CHECK(evaluate_impact(bma, temp) == doctest::Approx(manual).epsilon(1e-13));
  }
  // Every member is negative at 3 degrees, so the average is too.
  for (const auto& m : bma.members) REQUIRE(evaluate_impact(m.function, 3.0) < 0.0);
  CHECK(evaluate_impact(bma, 3.0) < 0.0);

  BmaImpact scaled = bma;
  scaled.scale = 2.0;
  CHECK(evaluate_impact(scaled, 2.0) == doctest::Approx(2.0 * evaluate_impact(bma, 2.0)));
}

TEST_CASE("invalid model averages are rejected") {
  BmaImpact bma = published_bma();
  bma.members[0].weight += 0.01;
  CHECK_THROWS_AS(bma.validate(), ConfigError);
  BmaImpact zero = published_bma();
  zero.scale = 0.0;
  CHECK_THROWS_AS(zero.validate(), ConfigError);
}

TEST_CASE("noiseless quadratic data are recovered and win the average") {
  const auto& o = t::oracle()["noiseless_quadratic"];
  const auto data = load_meta_dataset(t::source_path("tests/oracles/quadratic_noiseless.csv"));
  REQUIRE(data.size() == static_cast<Eigen::Index>(o["warming"].size()));
  const auto fits = fit_functions(data);
  const auto& quad = find(fits, ImpactForm::Quadratic);
  CHECK(std::abs(quad.function.params[0] - double(o["coefficient"])) <= 1e-6);
  CHECK(quad.ssr <= 1e-12);

  const auto bma = bma_weights(fits, data.size(), exact_fit_floor(data));
  double top = 0.0;
  for (const auto& m : bma.members) top = std::max(top, m.weight);
  double quad_weight = 0.0;
  for (const auto& m : bma.members)
    if (m.function.form == ImpactForm::Quadratic) quad_weight = m.weight;
  CHECK(quad_weight == top);
  CHECK(quad_weight > 0.0);
}

TEST_CASE("one-parameter linear fit matches closed-form least squares") {
  const auto& o = t::oracle()["linear_two_points"];
  const auto data = dataset(o["warming"], o["impact_pct"]);
  const auto fit = fit_form(ImpactForm::Linear, data);
  CHECK(t::relative_error(fit.function.params[0], o["slope"]) < 1e-12);
}

TEST_CASE("too few observations for a form is an error") {
  const auto data = dataset({1.0, 2.0}, {-0.5, -1.0});
  CHECK_THROWS_AS(fit_form(ImpactForm::Threshold, data), DataError);
  CHECK_NOTHROW(fit_form(ImpactForm::Linear, data));
}

TEST_CASE("fixed forms are evaluated, not fitted") {
  const auto data = load_meta_dataset(t::source_path("data/synthetic/meta_synthetic.csv"));
  for (ImpactForm form : {ImpactForm::QuadraticBarrage, ImpactForm::QuadraticHoward, ImpactForm::HazardWeitzman}) {
    const auto fit = fit_form(form, data);
    CHECK_FALSE(fit.fitted);
    CHECK(fit.function.params == published_function(form).params);
  }
}

TEST_CASE("model-average weights") {
  std::vector<FitResult> fits(2);
  fits[0].function = published_function(ImpactForm::Linear);
  fits[1].function = published_function(ImpactForm::Quadratic);
  fits[0].ssr = fits[1].ssr = 3.0;
  auto bma = bma_weights(fits, 10);
  CHECK(bma.members[0].weight == doctest::Approx(0.5));
  CHECK(bma.members[1].weight == doctest::Approx(0.5));

  fits[1].ssr = 6.0;
  bma = bma_weights(fits, 10);
  CHECK(bma.members[0].weight + bma.members[1].weight == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bma.members[0].weight / bma.members[1].weight == doctest::Approx(std::pow(2.0, 5.0)));

  fits[1].converged = false;
  bma = bma_weights(fits, 10);
  CHECK(bma.members[1].weight == 0.0);

  CHECK_THROWS(bma_weights({}, 10));
}

TEST_CASE("fit report lists every form") {
  const auto data = load_meta_dataset(t::source_path("data/synthetic/meta_synthetic.csv"));
  const auto fits = fit_functions(data);
  std::ostringstream out;
  write_fit_report(fits, bma_weights(fits, data.size(), exact_fit_floor(data)), out);
  const std::string text = out.str();
  CHECK(text.rfind("form,param1,param2,param3,param4,ssr,weight\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 14);
}

TEST_CASE("meta-analysis reader") {
  std::istringstream one("warming_c,impact_pct_gdp\n1,2\n");
  CHECK_THROWS_AS(read_meta_csv(one, "one"), DataError);
  std::istringstream bad("warming_c,impact_pct_gdp\n1,2\nx,3\n");
  CHECK_THROWS_AS(read_meta_csv(bad, "bad"), DataError);
}
