#ifndef DLC_DISTRIBUTIONS_HPP
#define DLC_DISTRIBUTIONS_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dlc/decision_list.hpp"
#include "dlc/kernel.hpp"
#include "dlc/modes.hpp"
#include "dlc/rational.hpp"
#include "dlc/restriction.hpp"
#include "dlc/sampling.hpp"
#include "dlc/subcube.hpp"
#include "dlc/usefulness.hpp"

namespace dlc {

enum class DistributionKind { Hit, Useful, Stability };

inline const char* to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::Hit: return "hit";
    case DistributionKind::Useful: return "useful";
    case DistributionKind::Stability: return "stability";
  }
  return "?";
}

/// Per-rule probabilities; entry i-1 belongs to rule i.
struct IndexDistribution {
  DistributionKind kind = DistributionKind::Hit;
  bool exact = true;
  std::vector<double> values;
  /// Exact rationals, when the computation is exact and rational.
  std::vector<Rational> rationals;
  /// Estimated mode only.
  std::uint64_t samples = 0;
  std::vector<double> half_width;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](RuleIndex i) const { return values.at(i - 1); }
  double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
  Rational exact_sum() const {
    Rational total = 0;
    for (const auto& r : rationals) total += r;
    return total;
  }
};

/// A scalar that is either exact or a Monte Carlo estimate.
struct Expectation {
  double value = 0.0;
  std::optional<Rational> rational;
  bool exact = true;
  double half_width = 0.0;
  std::uint64_t samples = 0;
};

/// Indicator of Ind L(x) = i over all assignments.
inline TruthTable index_indicator(std::span<const RuleIndex> table, unsigned n, RuleIndex i) {
  TruthTable g = TruthTable::zeros(n);
  for (std::size_t x = 0; x < table.size(); ++x) g.bits[x] = table[x] == i ? 1 : 0;
  return g;
}

inline TruthTable index_indicator(const DecisionList& list, RuleIndex i, const ExactMode& mode = {}) {
  return index_indicator(batch_index_of(list, mode), list.n(), i);
}

/// p_L(i) = Pr_x[Ind L(x) = i].
inline IndexDistribution hit_distribution(const DecisionList& list, const EvalMode& mode = ExactMode{}) {
  IndexDistribution out;
  out.kind = DistributionKind::Hit;
  if (const auto* exact = std::get_if<ExactMode>(&mode)) {
    const auto counts = hit_counts(list, *exact);
    for (auto c : counts) {
      out.rationals.push_back(dyadic(c, list.n()));
      out.values.push_back(std::ldexp(static_cast<double>(c), -static_cast<int>(list.n())));
    }
    return out;
  }
  const auto& mc = std::get<MonteCarloMode>(mode);
  const unsigned n = list.n();
  const auto counts = monte_carlo(
      mc, std::vector<std::uint64_t>(list.size(), 0),
      [&](RandomSource& rng, std::vector<std::uint64_t>& acc) { ++acc[list.index_of(rng.next() & low_mask(n)) - 1]; },
      [](std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
      });
  out.exact = false;
  out.samples = mc.samples;
  for (auto c : counts) {
    const auto e = Estimate::from_count(c, mc.samples);
    out.values.push_back(e.value);
    out.half_width.push_back(e.half_width);
  }
  return out;
}

/// q_L(alpha, i) under U(alpha), or its R(k) analogue, for every rule.
inline IndexDistribution useful_distribution(const DecisionList& list, const RestrictionModel& model,
                                             const EvalMode& mode = ExactMode{}) {
  const unsigned n = list.n();
  validate_model(model, n);
  IndexDistribution out;
  out.kind = DistributionKind::Useful;
  if (const auto* exact = std::get_if<ExactMode>(&mode)) {
    exact->limits.require_restrictions(n, "useful_distribution");
    const auto table = batch_index_of(list, *exact);
    const auto counts = hit_counts(list, *exact);
    const auto* uniform = std::get_if<UniformStars>(&model);
    for (RuleIndex i = 1; i <= list.size(); ++i) {
      // A rule never hit by a full assignment is useful under no restriction.
      if (counts[i - 1] == 0) {
        out.values.push_back(0.0);
        if (!uniform) out.rationals.emplace_back(0);
        continue;
      }
      const auto profile = subcube_profile(index_indicator(table, n, i), exact->limits);
      if (uniform) {
        out.values.push_back(profile.nonzero_probability(uniform->alpha));
      } else {
        auto q = profile.nonzero_fraction(std::get<ExactStars>(model).k);
        out.values.push_back(to_double(q));
        out.rationals.push_back(std::move(q));
      }
    }
    return out;
  }
  const auto& mc = std::get<MonteCarloMode>(mode);
  const auto counts = monte_carlo(
      mc, std::vector<std::uint64_t>(list.size(), 0),
      [&](RandomSource& rng, std::vector<std::uint64_t>& acc) {
        const auto rho = sample_restriction(n, model, rng);
        const auto mask = useful_mask(restrict(list, rho), UsefulnessSearch::Auto);
        for (std::size_t i = 0; i < mask.size(); ++i) acc[i] += mask[i] ? 1 : 0;
      },
      [](std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
      });
  out.exact = false;
  out.samples = mc.samples;
  for (auto c : counts) {
    const auto e = Estimate::from_count(c, mc.samples);
    out.values.push_back(e.value);
    out.half_width.push_back(e.half_width);
  }
  return out;
}

/// E_rho[usenum(L restricted to rho)].
///
/// The exact route computes the useful set of every restriction directly
/// (union over completions) rather than summing per-index probabilities.
inline Expectation expected_usenum(const DecisionList& list, const RestrictionModel& model,
                                   const EvalMode& mode = ExactMode{}) {
  const unsigned n = list.n();
  validate_model(model, n);
  Expectation out;
  if (const auto* exact = std::get_if<ExactMode>(&mode)) {
    const auto table = batch_index_of(list, *exact);
    const auto by_stars = usenum_by_stars(table, n, list.size(), exact->limits);
    if (const auto* u = std::get_if<UniformStars>(&model)) {
      const double fixed_cell = (1.0 - u->alpha) / 2.0;
      for (unsigned s = 0; s <= n; ++s) {
        out.value += std::pow(u->alpha, s) * std::pow(fixed_cell, n - s) * static_cast<double>(by_stars[s]);
      }
    } else {
      const unsigned k = std::get<ExactStars>(model).k;
      out.rational = make_rational(BigInt(by_stars[k]), restriction_count(n, k));
      out.value = to_double(*out.rational);
    }
    return out;
  }
  const auto& mc = std::get<MonteCarloMode>(mode);
  struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  const auto m = monte_carlo(
      mc, Moments{},
      [&](RandomSource& rng, Moments& acc) {
        const auto rho = sample_restriction(n, model, rng);
        const auto u = static_cast<double>(usenum(restrict(list, rho), UsefulnessSearch::Auto));
        acc.sum += u;
        acc.sum_sq += u * u;
      },
      [](Moments& into, const Moments& from) {
        into.sum += from.sum;
        into.sum_sq += from.sum_sq;
      });
  const auto count = static_cast<double>(mc.samples);
  out.exact = false;
  out.samples = mc.samples;
  out.value = m.sum / count;
  const double var = count > 1 ? std::max(0.0, (m.sum_sq - count * out.value * out.value) / (count - 1)) : 0.0;
  out.half_width = kZ95 * std::sqrt(var / count);
  return out;
}

/// Stab_beta(g) = Pr[g(x) = g(y) = 1], x uniform, y ~ N_beta(x), computed as
/// the U(n, 1 - beta) average of r_rho^2 over all 3^n restrictions.
inline double function_stability(const TruthTable& g, double beta, const EnumerationLimits& limits = {}) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  return subcube_profile(g, limits).mean_square(1.0 - beta);
}

/// Stab_L(beta, i) = Pr[Ind L(x) = Ind L(y) = i].
inline Expectation index_stability(const DecisionList& list, double beta, RuleIndex i,
                                   const EvalMode& mode = ExactMode{}) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (i == 0 || i > list.size()) throw std::out_of_range("rule index out of range");
  const unsigned n = list.n();
  Expectation out;
  if (const auto* exact = std::get_if<ExactMode>(&mode)) {
    exact->limits.require_restrictions(n, "index_stability");
    out.value = function_stability(index_indicator(list, i, *exact), beta, exact->limits);
    return out;
  }
  const auto& mc = std::get<MonteCarloMode>(mode);
  const auto hits = monte_carlo_count(mc, [&](RandomSource& rng) {
    const std::uint64_t x = rng.next() & low_mask(n);
    const std::uint64_t y = sample_noisy_bits(x, n, beta, rng);
    return list.index_of(x) == i && list.index_of(y) == i;
  });
  const auto e = Estimate::from_count(hits, mc.samples);
  out.exact = false;
  out.value = e.value;
  out.half_width = e.half_width;
  out.samples = e.samples;
  return out;
}

/// Stab_L(beta, i) for every rule, sharing one index table.
inline IndexDistribution stability_distribution(const DecisionList& list, double beta,
                                                const ExactMode& mode = {}) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  mode.limits.require_restrictions(list.n(), "stability_distribution");
  IndexDistribution out;
  out.kind = DistributionKind::Stability;
  const auto table = batch_index_of(list, mode);
  const auto counts = hit_counts(list, mode);
  for (RuleIndex i = 1; i <= list.size(); ++i) {
    out.values.push_back(counts[i - 1] == 0 ? 0.0
                                            : function_stability(index_indicator(table, list.n(), i), beta, mode.limits));
  }
  return out;
}

}  // namespace dlc

#endif  // DLC_DISTRIBUTIONS_HPP
