#pragma once

// Global impact functions (percent of GDP as a function of warming), their
// least-squares fits, and the likelihood-weighted model average.

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "natscc/errors.hpp"
#include "natscc/units.hpp"

namespace natscc {

enum class ImpactForm {
  Parabolic,         // a T + b T^2
  Threshold,         // 0 if T <= -offset, else a (T + offset)^p
  PiecewiseLinear,   // s1 T if T <= switch, else s1 kink - s2 T
  Quadratic,         // a T^2
  HazardT6,          // a T^2 + b T^6
  HazardT7,          // a T^2 + b T^7
  Linear,            // a T
  Cubic,             // a T^3
  Quartic,           // a T^4
  Exponential,       // a - a e^T
  QuadraticBarrage,  // a T^2, fixed
  QuadraticHoward,   // a T^2, fixed
  HazardWeitzman,    // a T^2 + b max(T, 0)^p, fixed
};

inline constexpr std::array<ImpactForm, 13> kAllImpactForms = {
    ImpactForm::Parabolic,  ImpactForm::Threshold,        ImpactForm::PiecewiseLinear,
    ImpactForm::Quadratic,  ImpactForm::HazardT6,         ImpactForm::HazardT7,
    ImpactForm::Linear,     ImpactForm::Cubic,            ImpactForm::Quartic,
    ImpactForm::Exponential, ImpactForm::QuadraticBarrage, ImpactForm::QuadraticHoward,
    ImpactForm::HazardWeitzman};

/// Snake-case name used in configs and reports, e.g. "piecewise_linear".
std::string_view form_name(ImpactForm form);
std::optional<ImpactForm> parse_form(std::string_view name);

/// The three high-pedigree parameterisations are evaluated, never fitted.
bool is_fixed_form(ImpactForm form);

/// Smallest and largest warming (degC) accepted by evaluate_impact.
inline constexpr double kMinWarming = -1.0;
inline constexpr double kMaxWarming = 10.0;

struct ImpactFunction {
  ImpactForm form = ImpactForm::Quadratic;
  /// Coefficients in percent-of-GDP units, in the order given on ImpactForm.
  std::vector<double> params;
};

/// Published central parameterisation of each form.
ImpactFunction published_function(ImpactForm form);

/// Published likelihood (percent) of each form, used as default weights.
double published_likelihood_percent(ImpactForm form);

/// Impact in percent of GDP; no range check.
template <typename Scalar>
Scalar impact_percent(const ImpactFunction& f, const Scalar& t) {
  using std::exp;
  using std::pow;
  const auto& p = f.params;
  const Scalar t2 = t * t;
  switch (f.form) {
    case ImpactForm::Parabolic:
      return p[0] * t + p[1] * t2;
    case ImpactForm::Threshold:
      if (t <= Scalar(-p[1])) return Scalar(0);
      return p[0] * pow(t + p[1], p[2]);
    case ImpactForm::PiecewiseLinear:
      if (t <= Scalar(p[3])) return p[0] * t;
      return Scalar(p[0] * p[1]) - p[2] * t;
    case ImpactForm::Quadratic:
    case ImpactForm::QuadraticBarrage:
    case ImpactForm::QuadraticHoward:
      return p[0] * t2;
    case ImpactForm::HazardT6:
      return p[0] * t2 + p[1] * pow(t, 6);
    case ImpactForm::HazardT7:
      return p[0] * t2 + p[1] * pow(t, 7);
    case ImpactForm::Linear:
      return p[0] * t;
    case ImpactForm::Cubic:
      return p[0] * t2 * t;
    case ImpactForm::Quartic:
      return p[0] * t2 * t2;
    case ImpactForm::Exponential:
      return Scalar(p[0]) - p[0] * exp(t);
    case ImpactForm::HazardWeitzman:
      if (t <= Scalar(0)) return p[0] * t2;
      return p[0] * t2 + p[1] * pow(t, p[2]);
  }
  return Scalar(0);
}

template <typename Scalar>
double value_of(const Scalar& x) {
  if constexpr (std::is_arithmetic_v<Scalar>)
    return static_cast<double>(x);
  else
    return x.value();
}

inline void check_warming(double t) {
  if (!(t >= kMinWarming && t <= kMaxWarming))
    throw NumericalError("warming of " + std::to_string(t) + " degC is outside the supported range [-1, 10]");
}

/// Impact as a fraction of GDP (negative = damage).
template <typename Scalar>
Scalar evaluate_impact(const ImpactFunction& f, const Scalar& t) {
  check_warming(value_of(t));
  return impact_percent(f, t) / Scalar(units::kPercent);
}

/// Weighted combination of impact functions, optionally scaled (the scale
/// carries the plus/minus two standard deviation sensitivity variants).
struct BmaImpact {
  struct Member {
    ImpactFunction function;
    double weight = 0.0;
  };
  std::vector<Member> members;
  double scale = 1.0;

  /// Throws ConfigError unless weights are >= 0 and sum to 1 (1e-12) and
  /// scale > 0.
  void validate() const;

  static BmaImpact single(ImpactFunction f, double scale = 1.0);
};

/// Published parameterisations weighted by their published likelihoods.
BmaImpact published_bma();

template <typename Scalar>
Scalar evaluate_impact(const BmaImpact& bma, const Scalar& t) {
  check_warming(value_of(t));
  Scalar sum(0);
  for (const auto& m : bma.members)
    if (m.weight > 0.0) sum += m.weight * impact_percent(m.function, t);
  return bma.scale * sum / Scalar(units::kPercent);
}

/// Warming/impact observations from a meta-analysis.
struct MetaDataset {
  Eigen::VectorXd warming;     // degC
  Eigen::VectorXd impact_pct;  // percent of GDP

  Eigen::Index size() const { return warming.size(); }
  void validate() const;
};

/// Reads `warming_c,impact_pct_gdp`.
MetaDataset read_meta_csv(std::istream& in, std::string_view origin);
MetaDataset load_meta_dataset(const std::filesystem::path& path);

/// Number of coefficients a fit estimates (0 for fixed forms).
int fitted_parameter_count(ImpactForm form);

struct FitResult {
  ImpactFunction function;
  double ssr = 0.0;
  bool fitted = false;     // false for fixed forms
  bool converged = true;   // false when the optimiser failed
  std::string message;
};

/// Least-squares fit of one form. Forms linear in their free coefficients are
/// solved by QR; the threshold form by Levenberg-Marquardt started from the
/// published values. Fixed forms are evaluated as published. Throws DataError
/// when the dataset has no more observations than the form has coefficients.
FitResult fit_form(ImpactForm form, const MetaDataset& data);

/// Fits every listed form (default: all 13). Optimiser failures are reported
/// in the result and do not abort the others.
std::vector<FitResult> fit_functions(const MetaDataset& data,
                                     const std::vector<ImpactForm>& forms = {kAllImpactForms.begin(),
                                                                             kAllImpactForms.end()});

/// Residual sum of squares below which a fit counts as exact: 1e-300, or the
/// rounding-noise level n (64 eps max|y|)^2 of the data if that is larger.
double exact_fit_floor(const MetaDataset& data);

/// Weights proportional to SSR^(-n/2), the concentrated Gaussian likelihood
/// with per-model error variance SSR/n. Non-converged fits get weight 0.
/// SSRs are floored at `ssr_floor` before weighting.
BmaImpact bma_weights(const std::vector<FitResult>& fits, Eigen::Index n, double ssr_floor = 1e-300);

/// Writes `form,param1,param2,param3,param4,ssr,weight`.
void write_fit_report(const std::vector<FitResult>& fits, const BmaImpact& bma, std::ostream& out);

}  // namespace natscc
