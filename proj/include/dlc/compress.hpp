#ifndef DLC_COMPRESS_HPP
#define DLC_COMPRESS_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dlc/decision_list.hpp"
#include "dlc/distributions.hpp"
#include "dlc/kernel.hpp"
#include "dlc/modes.hpp"
#include "dlc/rational.hpp"

namespace dlc {

/// Pr_x[a(x) != b(x)] compared by value label.
inline Expectation distance(const DecisionList& a, const DecisionList& b, const EvalMode& mode = ExactMode{}) {
  if (a.n() != b.n()) throw std::invalid_argument("distance: lists have different variable counts");
  Expectation out;
  if (const auto* exact = std::get_if<ExactMode>(&mode)) {
    out.rational = dyadic(mismatch_count(a, b, *exact), a.n());
    out.value = to_double(*out.rational);
    return out;
  }
  const auto& mc = std::get<MonteCarloMode>(mode);
  const unsigned n = a.n();
  const auto hits = monte_carlo_count(mc, [&](RandomSource& rng) {
    const std::uint64_t x = rng.next() & low_mask(n);
    return a.eval(x) != b.eval(x);
  });
  const auto e = Estimate::from_count(hits, mc.samples);
  out.exact = false;
  out.value = e.value;
  out.half_width = e.half_width;
  out.samples = e.samples;
  return out;
}

/// Rules by descending hit probability; ties keep ascending rule order.
inline std::vector<RuleIndex> rank_by_hit(const DecisionList& list, const IndexDistribution& p) {
  if (p.size() != list.size()) {
    throw std::invalid_argument("rank_by_hit: distribution has " + std::to_string(p.size()) + " entries, list has " +
                                std::to_string(list.size()) + " rules");
  }
  std::vector<RuleIndex> order(list.size());
  std::iota(order.begin(), order.end(), RuleIndex{1});
  if (!p.rationals.empty()) {
    std::stable_sort(order.begin(), order.end(),
                     [&](RuleIndex a, RuleIndex b) { return p.rationals[a - 1] > p.rationals[b - 1]; });
  } else {
    std::stable_sort(order.begin(), order.end(), [&](RuleIndex a, RuleIndex b) { return p[a] > p[b]; });
  }
  return order;
}

struct CompressionResult {
  std::vector<RuleIndex> kept;  ///< J, ascending, always ends with m
  DecisionList sublist;         ///< L|_J
  std::size_t t = 0;            ///< number of top-ranked rules taken
  double dropped_mass = 0.0;    ///< sum of p_L(i) over i not in J
  std::optional<Rational> dropped_exact;
  Expectation distance;         ///< Pr[L != L|_J]
  unsigned junta_size = 0;      ///< distinct variables of L|_J
  bool bound_binding = true;    ///< false when a size bound reached m and was capped
};

inline const char* mode_name(const EvalMode& mode) {
  return std::holds_alternative<ExactMode>(mode) ? "exact" : "mc";
}

/// J = first t rules of rank_by_hit plus the default rule m.
inline CompressionResult take_top(const DecisionList& list, std::size_t t, const IndexDistribution& p,
                                  const EvalMode& mode = ExactMode{}) {
  const std::size_t m = list.size();
  if (t < 1 || t > m) throw std::out_of_range("take_top: t = " + std::to_string(t) + " outside [1, " + std::to_string(m) + "]");
  const auto order = rank_by_hit(list, p);
  std::vector<bool> in(m, false);
  for (std::size_t k = 0; k < t; ++k) in[order[k] - 1] = true;
  in[m - 1] = true;

  std::vector<RuleIndex> kept;
  double dropped = 0.0;
  Rational dropped_exact = 0;
  const bool rational = !p.rationals.empty();
  for (RuleIndex i = 1; i <= m; ++i) {
    if (in[i - 1]) {
      kept.push_back(i);
    } else {
      dropped += p[i];
      if (rational) dropped_exact += p.rationals[i - 1];
    }
  }
  auto sub = list.sublist(kept);
  CompressionResult result{std::move(kept), sub, t, dropped, std::nullopt, distance(list, sub, mode),
                           static_cast<unsigned>(std::popcount(sub.support())), true};
  if (rational) {
    result.dropped_exact = dropped_exact;
    result.dropped_mass = to_double(dropped_exact);
  }
  return result;
}

/// Smallest t whose dropped mass is at most epsilon; the measured distance
/// is reported alongside and may be smaller.
inline CompressionResult min_size_for_error(const DecisionList& list, double epsilon,
                                            const EvalMode& mode = ExactMode{}) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
  const auto p = hit_distribution(list, mode);
  const auto order = rank_by_hit(list, p);
  const std::size_t m = list.size();
  const bool rational = !p.rationals.empty();
  const Rational eps_exact(epsilon);

  // kept mass after taking the top t rules, always counting the default.
  std::vector<bool> in(m, false);
  in[m - 1] = true;
  double kept = p[static_cast<RuleIndex>(m)];
  Rational kept_exact = rational ? p.rationals[m - 1] : Rational(0);
  const double total = p.sum();
  const Rational total_exact = rational ? p.exact_sum() : Rational(0);
  std::size_t chosen = m;
  for (std::size_t t = 1; t <= m; ++t) {
    const RuleIndex r = order[t - 1];
    if (!in[r - 1]) {
      in[r - 1] = true;
      kept += p[r];
      if (rational) kept_exact += p.rationals[r - 1];
    }
    const bool ok = rational ? (total_exact - kept_exact) <= eps_exact : (total - kept) <= epsilon;
    if (ok) {
      chosen = t;
      break;
    }
  }
  return take_top(list, chosen, p, mode);
}

struct SizeBound {
  unsigned w = 0;
  double epsilon = 0.0;
  double ell = 0.0;    ///< log2(1/epsilon) / w
  double beta = 0.0;   ///< 1/2 if ell <= 2, else 1/ell
  double log2_t = 0.0;
  std::uint64_t t = 0; ///< ceil(4 (1/eps)^(4 beta) (4/beta)^(3w)), saturated at 2^64-1
  bool saturated = false;
};

/// Explicit-constant size t = 4 (1/eps)^(4 beta) (4/beta)^(3w) with the
/// piecewise choice of beta.
inline SizeBound theorem_size_bound(unsigned w, double epsilon) {
  if (w < 1) throw std::invalid_argument("theorem_size_bound: width must be at least 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("theorem_size_bound: epsilon must lie in (0, 1)");
  SizeBound b;
  b.w = w;
  b.epsilon = epsilon;
  const double log_inv_eps = -std::log2(epsilon);
  b.ell = log_inv_eps / w;
  b.beta = b.ell <= 2.0 ? 0.5 : 1.0 / b.ell;
  b.log2_t = 2.0 + 4.0 * b.beta * log_inv_eps + 3.0 * w * std::log2(4.0 / b.beta);
  if (b.log2_t >= 64.0) {
    b.t = std::numeric_limits<std::uint64_t>::max();
    b.saturated = true;
    return b;
  }
  const double real = std::exp2(b.log2_t);
  const double nearest = std::nearbyint(real);
  // Absorb floating noise when the exact value is an integer.
  const double value = std::abs(real - nearest) <= 1e-9 * real ? nearest : std::ceil(real);
  b.t = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(value));
  return b;
}

/// take_top with t = theorem_size_bound(width, epsilon).t capped at m.
inline CompressionResult compress_to_theorem_bound(const DecisionList& list, double epsilon,
                                                   const EvalMode& mode = ExactMode{}) {
  const std::size_t m = list.size();
  std::size_t t = m;
  bool binding = false;
  if (list.width() >= 1) {
    const auto bound = theorem_size_bound(list.width(), epsilon);
    binding = bound.t < m;
    t = binding ? static_cast<std::size_t>(bound.t) : m;
  }
  auto result = take_top(list, t, hit_distribution(list, mode), mode);
  result.bound_binding = binding;
  return result;
}

/// Greedy compression of a DNF-shaped list; the output keeps a subset of
/// the terms, so it is pointwise at most the input.
inline CompressionResult sparsify_dnf(const DecisionList& dnf, double epsilon, const EvalMode& mode = ExactMode{}) {
  if (!is_dnf_shaped(dnf)) throw std::invalid_argument("sparsify_dnf: list is not DNF-shaped");
  return min_size_for_error(dnf, epsilon, mode);
}

}  // namespace dlc

#endif  // DLC_COMPRESS_HPP
