#include "natscc/liability.hpp"

#include "natscc/errors.hpp"
#include "natscc/parallel.hpp"
#include "natscc/units.hpp"

namespace natscc {

LiabilityReport blame_matrix(const std::vector<std::string>& countries, const Eigen::ArrayXd& scc,
                             const Eigen::ArrayXd& emissions, const Eigen::ArrayXd& gdp, int evaluation_year) {
  const auto n = static_cast<Eigen::Index>(countries.size());
  if (scc.size() != n || emissions.size() != n || gdp.size() != n)
    throw DataError("blame matrix inputs cover different country sets");
  if ((gdp == 0.0).any()) throw DataError("blame matrix needs non-zero GDP for normalisation");

  LiabilityReport out;
  out.evaluation_year = evaluation_year;
  out.countries = countries;
  out.gdp = gdp;
  out.harm_done.resize(n);
  out.damage_suffered.resize(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    double others_scc = 0.0;
    double others_emissions = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c) continue;
      others_scc += scc(i);
      others_emissions += emissions(i);
    }
    out.harm_done(c) = emissions(c) * others_scc;
    out.damage_suffered(c) = scc(c) * others_emissions;
  }
  out.net_liability = out.harm_done - out.damage_suffered;
  return out;
}

LiabilityReport liability_report(const SccTable& scc, const WorldTrajectory& traj) {
  if (scc.countries != traj.countries) throw DataError("SCC table and trajectory cover different countries");
  if (!traj.contains(scc.pulse_year)) throw DataError("evaluation year is outside the trajectory");
  const auto j = traj.column(scc.pulse_year);
  return blame_matrix(scc.countries, scc.scc, traj.emissions.col(j) * units::kTonnesPerMegatonne,
                      traj.gdp_gross.col(j), scc.pulse_year);
}

Eigen::ArrayXd share_gap(const Eigen::ArrayXd& scc, const Eigen::ArrayXd& emissions) {
  return emissions / emissions.sum() - scc / scc.sum();
}

DebtLedger historical_debt(const WorldTrajectory& base, const RunConfig& config, const HistoricalEmissions& hist,
                           int workers) {
  constexpr int first = HistoricalEmissions::kFirstYear;
  constexpr int last = DebtLedger::kDebtYear;
  if (hist.countries != base.countries)
    throw DataError("historical emissions and scenario cover different countries");
  if (!base.contains(first) || !base.contains(last))
    throw DataError("scenario must cover 1960-2015 for historical debt");
  hist.validate();

  const auto n = base.num_countries();
  const int span = last - first + 1;
  const auto rates = ramsey_rates(base, config.prtp, config.emuc);

  DebtLedger out;
  out.countries = base.countries;
  out.marginal_by_country.resize(n, span);
  for (int t = first; t <= last; ++t) out.emission_years.push_back(t);

  parallel_for(static_cast<std::size_t>(span), workers, [&](std::size_t k) {
    const int t = first + static_cast<int>(k);
    const Eigen::ArrayXXd marginal = marginal_damages(base, config, t, last, config.pulse_size);
    const Eigen::ArrayXXd interest = rates.compound_factors(t, last);
    out.marginal_by_country.col(static_cast<Eigen::Index>(k)) = (marginal * interest).rowwise().sum();
  });
  out.marginal_debt = out.marginal_by_country.colwise().sum().transpose();

  const Eigen::ArrayXXd emitted = hist.emissions * units::kTonnesPerMegatonne;  // tC
  out.gross_debt = Eigen::ArrayXd::Zero(n);
  out.gross_harm = Eigen::ArrayXd::Zero(n);
  out.net_debt = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index k = 0; k < span; ++k) {
    const Eigen::ArrayXd md = out.marginal_by_country.col(k);
    const Eigen::ArrayXd m = emitted.col(k);
    const double total_md = md.sum();
    const double total_m = m.sum();
    out.gross_debt += md * total_m;
    const Eigen::ArrayXd harm = m * (total_md - md);
    const Eigen::ArrayXd suffered = md * (total_m - m);
    out.gross_harm += harm;
    out.net_debt += harm - suffered;
  }
  return out;
}

DebtLedger historical_debt(const Scenario& scenario, const RunConfig& config, const HistoricalEmissions& hist,
                           int workers) {
  return historical_debt(run_baseline(scenario, config), config, hist, workers);
}

}  // namespace natscc
