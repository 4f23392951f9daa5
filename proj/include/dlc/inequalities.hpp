#ifndef DLC_INEQUALITIES_HPP
#define DLC_INEQUALITIES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dlc/decision_list.hpp"
#include "dlc/distributions.hpp"
#include "dlc/modes.hpp"
#include "dlc/subcube.hpp"

namespace dlc {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kDefaultTolerance = 1e-9;

/// One checked chain lower <= middle <= upper. Unused fields stay NaN.
struct InequalityRecord {
  std::string check;
  std::size_t instance = 0;
  RuleIndex index = 0;
  double p = kNaN;
  double q = kNaN;
  double stab = kNaN;
  double lower = kNaN;
  double middle = kNaN;
  double upper = kNaN;
  double slack_lo = kNaN;  ///< middle - lower
  double slack_hi = kNaN;  ///< upper - middle
  double slack_cor = kNaN; ///< q^((1+beta)/(2 beta)) - p, bridging only
  bool pass = true;
  std::string note;

  /// Sets pass from the slacks; NaN slacks are not part of the check.
  void settle(double tolerance) {
    auto ok = [&](double s) { return std::isnan(s) || s >= -tolerance; };
    pass = ok(slack_lo) && ok(slack_hi) && ok(slack_cor);
  }
};

struct InequalityReport {
  double tolerance = kDefaultTolerance;
  std::vector<InequalityRecord> records;
  /// Vacuous or degenerate cases worth surfacing (never silently skipped).
  std::vector<std::string> notes;

  bool pass() const {
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
  }

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.pass; }));
  }

  double min_slack() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : records) {
      for (double s : {r.slack_lo, r.slack_hi, r.slack_cor}) {
        if (!std::isnan(s)) best = std::min(best, s);
      }
    }
    return best;
  }

  void append(const InequalityReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }
};

namespace detail {

inline void require_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
}

inline void fill_bridging(InequalityRecord& rec, double beta, InequalityReport& report) {
  rec.upper = std::pow(rec.p, 2.0 / (1.0 + beta));
  if (rec.q > 0.0) {
    rec.lower = rec.p * rec.p / rec.q;
  } else {
    rec.lower = 0.0;
    rec.note = "vacuous lower bound: p = q = 0";
    report.notes.push_back("index " + std::to_string(rec.index) + ": p = q = 0, lower bound holds vacuously");
  }
  rec.middle = rec.stab;
  rec.slack_lo = rec.middle - rec.lower;
  rec.slack_hi = rec.upper - rec.middle;
  rec.slack_cor = std::pow(rec.q, (1.0 + beta) / (2.0 * beta)) - rec.p;
}

}  // namespace detail

/// Per rule: p^2/q <= Stab_L(beta, i) <= p^(2/(1+beta)) with q = q_L(1-beta, i),
/// and p <= q^((1+beta)/(2 beta)).
///
/// In Monte Carlo mode each record's tolerance is widened by four times the
/// largest CI half-width among p, q and Stab.
inline InequalityReport bridging_check(const DecisionList& list, double beta, const EvalMode& mode = ExactMode{},
                                       double tolerance = kDefaultTolerance) {
  detail::require_beta(beta);
  InequalityReport report;
  report.tolerance = tolerance;
  const RestrictionModel model = UniformStars{1.0 - beta};
  if (const auto* exact = std::get_if<ExactMode>(&mode)) {
    const auto p = hit_distribution(list, *exact);
    const auto q = useful_distribution(list, model, *exact);
    const auto stab = stability_distribution(list, beta, *exact);
    for (RuleIndex i = 1; i <= list.size(); ++i) {
      InequalityRecord rec;
      rec.check = "bridging";
      rec.index = i;
      rec.p = p[i];
      rec.q = q[i];
      rec.stab = stab[i];
      detail::fill_bridging(rec, beta, report);
      rec.settle(tolerance);
      report.records.push_back(std::move(rec));
    }
    return report;
  }
  auto mc = std::get<MonteCarloMode>(mode);
  const auto p = hit_distribution(list, mc);
  mc.rng = mc.rng.split(1);
  const auto q = useful_distribution(list, model, mc);
  for (RuleIndex i = 1; i <= list.size(); ++i) {
    MonteCarloMode stab_mode = mc;
    stab_mode.rng = mc.rng.split(100 + i);
    const auto stab = index_stability(list, beta, i, stab_mode);
    InequalityRecord rec;
    rec.check = "bridging";
    rec.index = i;
    rec.p = p[i];
    rec.q = q[i];
    rec.stab = stab.value;
    detail::fill_bridging(rec, beta, report);
    const double spread = 4.0 * std::max({p.half_width[i - 1], q.half_width[i - 1], stab.half_width});
    rec.settle(tolerance + spread);
    report.records.push_back(std::move(rec));
  }
  return report;
}

/// Stab_beta(g) <= Pr[g = 1]^(2/(1+beta)) for a boolean function g.
inline InequalityReport hypercontractivity_check(const TruthTable& g, double beta,
                                                 const EnumerationLimits& limits = {},
                                                 double tolerance = kDefaultTolerance) {
  detail::require_beta(beta);
  InequalityReport report;
  report.tolerance = tolerance;
  InequalityRecord rec;
  rec.check = "hypercontractivity";
  rec.p = g.density();
  rec.stab = function_stability(g, beta, limits);
  rec.middle = rec.stab;
  rec.upper = std::pow(rec.p, 2.0 / (1.0 + beta));
  rec.slack_hi = rec.upper - rec.middle;
  rec.settle(tolerance);
  report.records.push_back(std::move(rec));
  return report;
}

/// Applies the hypercontractive bound to g = [Ind L(x) = i].
inline InequalityReport hypercontractivity_check(const DecisionList& list, RuleIndex i, double beta,
                                                 const ExactMode& mode = {},
                                                 double tolerance = kDefaultTolerance) {
  mode.limits.require_restrictions(list.n(), "hypercontractivity_check");
  auto report = hypercontractivity_check(index_indicator(list, i, mode), beta, mode.limits, tolerance);
  report.records.back().index = i;
  return report;
}

/// |g|^2 / Pr_{rho ~ U(n, 1-beta)}[g|rho != 0] <= Stab_beta(g) <= |g|^(2/(1+beta)).
inline InequalityReport general_bridging_check(const TruthTable& g, double beta,
                                               const EnumerationLimits& limits = {},
                                               double tolerance = kDefaultTolerance) {
  detail::require_beta(beta);
  if (g.ones() == 0) throw std::invalid_argument("general bridging needs g not identically zero");
  InequalityReport report;
  report.tolerance = tolerance;
  const auto profile = subcube_profile(g, limits);
  InequalityRecord rec;
  rec.check = "general_bridging";
  rec.p = g.density();
  rec.q = profile.nonzero_probability(1.0 - beta);
  rec.stab = profile.mean_square(1.0 - beta);
  rec.lower = rec.p * rec.p / rec.q;
  rec.middle = rec.stab;
  rec.upper = std::pow(rec.p, 2.0 / (1.0 + beta));
  rec.slack_lo = rec.middle - rec.lower;
  rec.slack_hi = rec.upper - rec.middle;
  rec.settle(tolerance);
  report.records.push_back(std::move(rec));
  return report;
}

/// Expected number of useful non-default terms of a DNF when each variable
/// is fixed independently with probability beta_fix, against (4/beta_fix)^w.
inline InequalityReport dnf_useful_terms_check(const DecisionList& dnf, double beta_fix,
                                               const ExactMode& mode = {},
                                               double tolerance = kDefaultTolerance) {
  if (!is_dnf_shaped(dnf)) throw std::invalid_argument("dnf_useful_terms_check: list is not DNF-shaped");
  if (!(beta_fix > 0.0 && beta_fix < 1.0)) throw std::invalid_argument("beta_fix must lie in (0, 1)");
  const auto q = useful_distribution(dnf, UniformStars{1.0 - beta_fix}, mode);
  double expected = 0.0;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) expected += q.values[i];
  InequalityReport report;
  report.tolerance = tolerance;
  InequalityRecord rec;
  rec.check = "dnf_useful_terms";
  rec.middle = expected;
  rec.upper = std::pow(4.0 / beta_fix, dnf.width());
  rec.slack_hi = rec.upper - rec.middle;
  rec.settle(tolerance);
  report.records.push_back(std::move(rec));
  return report;
}

}  // namespace dlc

#endif  // DLC_INEQUALITIES_HPP
