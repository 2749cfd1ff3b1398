#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <unsupported/Eigen/NumericalDiff>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "natscc/csv.hpp"
#include "natscc/impact.hpp"
#include "natscc/keyvalue.hpp"

namespace natscc {

namespace {

struct FormInfo {
  ImpactForm form;
  std::string_view name;
  std::vector<double> params;
  double likelihood_percent;
};

// Central parameterisations and likelihoods of the thirteen functions.
const std::vector<FormInfo>& form_table() {
  static const std::vector<FormInfo> table = {
      {ImpactForm::Parabolic, "parabolic", {-0.45, -0.082}, 19.65},
      {ImpactForm::Threshold, "threshold", {-0.49, 0.21, 1.3}, 18.01},
      {ImpactForm::PiecewiseLinear, "piecewise_linear", {0.46, 0.74, 0.90, 0.90}, 14.31},
      {ImpactForm::Quadratic, "quadratic", {-0.17}, 13.15},
      {ImpactForm::HazardT6, "hazard_t6", {-0.19, 1.10e-5}, 11.12},
      {ImpactForm::HazardT7, "hazard_t7", {-0.18, 1.55e-6}, 11.02},
      {ImpactForm::Linear, "linear", {-0.79}, 10.68},
      {ImpactForm::Cubic, "cubic", {-0.028}, 1.60},
      {ImpactForm::Quartic, "quartic", {-0.0039}, 0.37},
      {ImpactForm::Exponential, "exponential", {0.0078}, 0.09},
      {ImpactForm::QuadraticBarrage, "quadratic_barrage", {-0.35}, 7.1e-4},
      {ImpactForm::QuadraticHoward, "quadratic_howard", {-0.86}, 5.8e-20},
      {ImpactForm::HazardWeitzman, "hazard_weitzman", {-0.24, -0.00051, 6.754}, 4.3e-47},
  };
  return table;
}

const FormInfo& info(ImpactForm form) {
  for (const auto& row : form_table())
    if (row.form == form) return row;
  throw std::logic_error("unknown impact form");
}

// Design matrix for forms that are linear in their free coefficients.
Eigen::MatrixXd design_matrix(ImpactForm form, const Eigen::VectorXd& t, const std::vector<double>& fixed) {
  const Eigen::Index n = t.size();
  const Eigen::ArrayXd x = t.array();
  Eigen::MatrixXd a(n, fitted_parameter_count(form));
  switch (form) {
    case ImpactForm::Parabolic:
      a << x.matrix(), x.square().matrix();
      break;
    case ImpactForm::PiecewiseLinear: {
      const double kink = fixed[1];
      const double switch_at = fixed[3];
      for (Eigen::Index i = 0; i < n; ++i) {
        if (x(i) <= switch_at) {
          a(i, 0) = x(i);
          a(i, 1) = 0.0;
        } else {
          a(i, 0) = kink;
          a(i, 1) = -x(i);
        }
      }
      break;
    }
    case ImpactForm::Quadratic:
      a << x.square().matrix();
      break;
    case ImpactForm::HazardT6:
      a << x.square().matrix(), x.pow(6).matrix();
      break;
    case ImpactForm::HazardT7:
      a << x.square().matrix(), x.pow(7).matrix();
      break;
    case ImpactForm::Linear:
      a << x.matrix();
      break;
    case ImpactForm::Cubic:
      a << x.cube().matrix();
      break;
    case ImpactForm::Quartic:
      a << x.square().square().matrix();
      break;
    case ImpactForm::Exponential:
      a << (1.0 - x.exp()).matrix();
      break;
    default:
      throw std::logic_error("form is not linear in its coefficients");
  }
  return a;
}

std::vector<double> unpack_linear(ImpactForm form, const Eigen::VectorXd& beta, std::vector<double> fixed) {
  if (form == ImpactForm::PiecewiseLinear) {
    fixed[0] = beta(0);
    fixed[2] = beta(1);
    return fixed;
  }
  return {beta.data(), beta.data() + beta.size()};
}

double ssr_of(const ImpactFunction& f, const MetaDataset& data) {
  double ssr = 0.0;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    const double r = impact_percent(f, data.warming(i)) - data.impact_pct(i);
    ssr += r * r;
  }
  return ssr;
}

// Residuals of a (T + offset)^p beyond -offset, zero below.
struct ThresholdResiduals : Eigen::DenseFunctor<double> {
  const MetaDataset& data;

  explicit ThresholdResiduals(const MetaDataset& d)
      : Eigen::DenseFunctor<double>(3, static_cast<int>(d.size())), data(d) {}

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fvec) const {
    const ImpactFunction f{ImpactForm::Threshold, {x(0), x(1), x(2)}};
    for (Eigen::Index i = 0; i < data.size(); ++i)
      fvec(i) = impact_percent(f, data.warming(i)) - data.impact_pct(i);
    return 0;
  }
};

FitResult fit_threshold(const MetaDataset& data) {
  FitResult out;
  out.fitted = true;
  const auto& start = info(ImpactForm::Threshold).params;
  Eigen::VectorXd x(3);
  x << start[0], start[1], start[2];

  ThresholdResiduals residuals(data);
  Eigen::NumericalDiff<ThresholdResiduals> numeric(residuals);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ThresholdResiduals>> lm(numeric);
  lm.setMaxfev(4000);
  lm.setXtol(1e-14);
  lm.setFtol(1e-14);
  const auto status = lm.minimize(x);

  out.function = {ImpactForm::Threshold, {x(0), x(1), x(2)}};
  out.ssr = ssr_of(out.function, data);
  using namespace Eigen::LevenbergMarquardtSpace;
  const bool ok = status != ImproperInputParameters && status != TooManyFunctionEvaluation &&
                  status != UserAsked && x.allFinite() && std::isfinite(out.ssr);
  out.converged = ok;
  out.message = ok ? "ok" : "levenberg-marquardt did not converge (status " + std::to_string(int(status)) + ")";
  return out;
}

}  // namespace

std::string_view form_name(ImpactForm form) { return info(form).name; }

std::optional<ImpactForm> parse_form(std::string_view name) {
  for (const auto& row : form_table())
    if (row.name == name) return row.form;
  return std::nullopt;
}

bool is_fixed_form(ImpactForm form) {
  return form == ImpactForm::QuadraticBarrage || form == ImpactForm::QuadraticHoward ||
         form == ImpactForm::HazardWeitzman;
}

ImpactFunction published_function(ImpactForm form) { return {form, info(form).params}; }

double published_likelihood_percent(ImpactForm form) { return info(form).likelihood_percent; }

int fitted_parameter_count(ImpactForm form) {
  switch (form) {
    case ImpactForm::Parabolic:
    case ImpactForm::PiecewiseLinear:
    case ImpactForm::HazardT6:
    case ImpactForm::HazardT7:
      return 2;
    case ImpactForm::Threshold:
      return 3;
    case ImpactForm::QuadraticBarrage:
    case ImpactForm::QuadraticHoward:
    case ImpactForm::HazardWeitzman:
      return 0;
    default:
      return 1;
  }
}

void BmaImpact::validate() const {
  if (members.empty()) throw ConfigError("impact average has no members");
  double total = 0.0;
  for (const auto& m : members) {
    if (!(m.weight >= 0.0)) throw ConfigError("impact weights must be >= 0");
    total += m.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ConfigError("impact weights must sum to 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("impact scale must be > 0");
}

BmaImpact BmaImpact::single(ImpactFunction f, double scale) {
  BmaImpact out;
  out.members.push_back({std::move(f), 1.0});
  out.scale = scale;
  return out;
}

BmaImpact published_bma() {
  BmaImpact out;
  double total = 0.0;
  for (const auto& row : form_table()) total += row.likelihood_percent;
  for (const auto& row : form_table())
    out.members.push_back({{row.form, row.params}, row.likelihood_percent / total});
  return out;
}

void MetaDataset::validate() const {
  if (warming.size() != impact_pct.size()) throw DataError("meta-analysis columns differ in length");
  if (warming.size() < 2) throw DataError("meta-analysis needs at least 2 observations");
  if (!warming.allFinite() || !impact_pct.allFinite()) throw DataError("meta-analysis values must be finite");
}

MetaDataset read_meta_csv(std::istream& in, std::string_view origin) {
  csv::expect_header(in, "warming_c,impact_pct_gdp", origin);
  std::vector<double> t;
  std::vector<double> y;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = csv::split(line);
    if (fields.size() != 2)
      throw DataError(std::string(origin) + ":" + std::to_string(line_no) + ": expected 2 fields");
    t.push_back(csv::parse_double(fields[0], origin, line_no));
    y.push_back(csv::parse_double(fields[1], origin, line_no));
  }
  MetaDataset out;
  out.warming = Eigen::Map<Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size()));
  out.impact_pct = Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  out.validate();
  return out;
}

MetaDataset load_meta_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open meta-analysis file " + path.string());
  return read_meta_csv(in, path.string());
}

FitResult fit_form(ImpactForm form, const MetaDataset& data) {
  data.validate();
  const int k = fitted_parameter_count(form);
  if (data.size() <= k)
    throw DataError("cannot fit " + std::string(form_name(form)) + ": " + std::to_string(data.size()) +
                    " observations for " + std::to_string(k) + " coefficients");

  if (is_fixed_form(form)) {
    FitResult out;
    out.function = published_function(form);
    out.ssr = ssr_of(out.function, data);
    out.message = "fixed";
    return out;
  }
  if (form == ImpactForm::Threshold) return fit_threshold(data);

  const auto& fixed = info(form).params;
  const Eigen::MatrixXd a = design_matrix(form, data.warming, fixed);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  FitResult out;
  out.fitted = true;
  if (qr.rank() < a.cols()) {
    out.function = published_function(form);
    out.ssr = ssr_of(out.function, data);
    out.converged = false;
    out.message = "rank-deficient design";
    return out;
  }
  const Eigen::VectorXd beta = qr.solve(data.impact_pct);
  out.function = {form, unpack_linear(form, beta, fixed)};
  out.ssr = ssr_of(out.function, data);
  out.message = "ok";
  return out;
}

std::vector<FitResult> fit_functions(const MetaDataset& data, const std::vector<ImpactForm>& forms) {
  data.validate();
  for (auto form : forms) {
    if (data.size() <= fitted_parameter_count(form))
      throw DataError("cannot fit " + std::string(form_name(form)) + ": too few observations");
  }
  std::vector<FitResult> out;
  out.reserve(forms.size());
  for (auto form : forms) out.push_back(fit_form(form, data));
  return out;
}

double exact_fit_floor(const MetaDataset& data) {
  const double scale = 64.0 * std::numeric_limits<double>::epsilon() * data.impact_pct.cwiseAbs().maxCoeff();
  return std::max(1e-300, static_cast<double>(data.size()) * scale * scale);
}

BmaImpact bma_weights(const std::vector<FitResult>& fits, Eigen::Index n, double ssr_floor) {
  if (fits.empty()) throw DataError("no impact-function fits to average");
  const double half_n = 0.5 * static_cast<double>(n);
  std::vector<double> log_like(fits.size(), -std::numeric_limits<double>::infinity());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fits.size(); ++i) {
    if (!fits[i].converged || !std::isfinite(fits[i].ssr)) continue;
    log_like[i] = -half_n * std::log(std::max(fits[i].ssr, ssr_floor));
    best = std::max(best, log_like[i]);
  }
  if (!std::isfinite(best)) throw DataError("no impact-function fit converged");

  BmaImpact out;
  double total = 0.0;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const double w = std::isfinite(log_like[i]) ? std::exp(log_like[i] - best) : 0.0;
    out.members.push_back({fits[i].function, w});
    total += w;
  }
  for (auto& m : out.members) m.weight /= total;
  return out;
}

void write_fit_report(const std::vector<FitResult>& fits, const BmaImpact& bma, std::ostream& out) {
  csv::write_header(out, {"form", "param1", "param2", "param3", "param4", "ssr", "weight"});
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const auto& f = fits[i];
    out << form_name(f.function.form);
    for (std::size_t p = 0; p < 4; ++p) {
      out << ',';
      if (p < f.function.params.size()) out << format_double(f.function.params[p]);
    }
    const double w = i < bma.members.size() ? bma.members[i].weight : 0.0;
    out << ',' << format_double(f.ssr) << ',' << format_double(w) << '\n';
  }
}

}  // namespace natscc
