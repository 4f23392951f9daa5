#ifndef DLC_SUBCUBE_HPP
#define DLC_SUBCUBE_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "dlc/decision_list.hpp"
#include "dlc/limits.hpp"
#include "dlc/rational.hpp"

// Restriction-indexed tables. A restriction rho over n variables is encoded
// in base 3 with digit j-1 describing x_j: 0 -> fixed 0, 1 -> fixed 1,
// 2 -> star. A table over all 3^n restrictions is built from a table over the
// 2^n full assignments by the transform T(..2..) = op(T(..0..), T(..1..)).

namespace dlc {

/// Truth table of g : {0,1}^n -> {0,1}; entry x uses bit j-1 for x_j.
struct TruthTable {
  unsigned n = 0;
  std::vector<std::uint8_t> bits;

  static TruthTable zeros(unsigned n) { return {n, std::vector<std::uint8_t>(std::size_t{1} << n, 0)}; }

  std::uint64_t ones() const {
    std::uint64_t c = 0;
    for (auto b : bits) c += b != 0;
    return c;
  }

  double density() const { return static_cast<double>(ones()) / static_cast<double>(bits.size()); }
};

inline std::uint64_t pow3(unsigned n) {
  std::uint64_t out = 1;
  for (unsigned j = 0; j < n; ++j) out *= 3;
  return out;
}

namespace detail {

/// Ternary code of the full assignment x (digits 0/1 only).
inline std::vector<std::uint64_t> ternary_codes(unsigned n) {
  std::vector<std::uint64_t> code(std::size_t{1} << n, 0);
  std::uint64_t place = 1;
  for (unsigned j = 0; j < n; ++j, place *= 3) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t x = bit; x < code.size(); x = (x + 1) | bit) code[x] += place;
  }
  return code;
}

template <class T, class Op>
void ternary_transform(std::vector<T>& table, unsigned n, Op op) {
  std::uint64_t place = 1;
  for (unsigned j = 0; j < n; ++j, place *= 3) {
    const std::uint64_t span = place * 3;
    for (std::uint64_t hi = 0; hi < table.size(); hi += span) {
      for (std::uint64_t lo = 0; lo < place; ++lo) {
        table[hi + 2 * place + lo] = op(table[hi + lo], table[hi + place + lo]);
      }
    }
  }
}

/// Calls fn(code, stars) for every restriction code in increasing order.
template <class Fn>
void for_each_code(unsigned n, Fn&& fn) {
  std::vector<std::uint8_t> digit(n, 0);
  const std::uint64_t total = pow3(n);
  unsigned stars = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    fn(code, stars);
    for (unsigned j = 0; j < n; ++j) {
      if (digit[j] == 2) {
        digit[j] = 0;
        --stars;
        continue;
      }
      if (++digit[j] == 2) ++stars;
      break;
    }
  }
}

}  // namespace detail

/// For each restriction rho: the number of completions x with g(x) = 1,
/// grouped into per-star-count summaries.
struct SubcubeProfile {
  unsigned n = 0;
  /// nonzero[s]: restrictions with s stars on which g is not identically 0.
  std::vector<std::uint64_t> nonzero;
  /// sum_sq[s]: sum over restrictions with s stars of (count / 2^s)^2.
  std::vector<double> sum_sq;

  /// Pr_{rho ~ U(n, alpha)}[g restricted to rho is not identically zero].
  double nonzero_probability(double alpha) const { return weighted(alpha, nonzero); }

  /// E_{rho ~ U(n, alpha)}[r_rho^2]; equals Stab_beta(g) when alpha = 1 - beta.
  double mean_square(double alpha) const { return weighted(alpha, sum_sq); }

  /// Exact Pr_{rho ~ R(n, k)}[g restricted to rho is not identically zero].
  Rational nonzero_fraction(unsigned k) const {
    return make_rational(BigInt(nonzero.at(k)), restriction_count(n, k));
  }

 private:
  template <class T>
  double weighted(double alpha, const std::vector<T>& by_stars) const {
    const double fixed_cell = (1.0 - alpha) / 2.0;
    double total = 0.0;
    for (unsigned s = 0; s <= n; ++s) {
      total += std::pow(alpha, s) * std::pow(fixed_cell, n - s) * static_cast<double>(by_stars[s]);
    }
    return total;
  }
};

inline SubcubeProfile subcube_profile(const TruthTable& g, const EnumerationLimits& limits = {}) {
  const unsigned n = g.n;
  limits.require_restrictions(n, "subcube_profile");
  if (g.bits.size() != (std::size_t{1} << n)) throw std::invalid_argument("truth table size must be 2^n");
  std::vector<std::uint32_t> counts(pow3(n), 0);
  const auto code = detail::ternary_codes(n);
  for (std::size_t x = 0; x < g.bits.size(); ++x) counts[code[x]] = g.bits[x] != 0 ? 1 : 0;
  detail::ternary_transform(counts, n, [](std::uint32_t a, std::uint32_t b) { return a + b; });

  SubcubeProfile profile;
  profile.n = n;
  profile.nonzero.assign(n + 1, 0);
  profile.sum_sq.assign(n + 1, 0.0);
  std::vector<double> scale(n + 1);
  for (unsigned s = 0; s <= n; ++s) scale[s] = std::ldexp(1.0, -static_cast<int>(s));
  detail::for_each_code(n, [&](std::uint64_t c, unsigned stars) {
    const std::uint32_t count = counts[c];
    if (count == 0) return;
    profile.nonzero[stars] += 1;
    const double r = count * scale[stars];
    profile.sum_sq[stars] += r * r;
  });
  return profile;
}

/// Sum over restrictions with s stars of usenum(L restricted to rho), for
/// every s, from the index table of all 2^n assignments. A rule is useful
/// under rho iff some completion hits it, so the useful set of rho is the
/// union of the sets of its two one-step completions.
inline std::vector<std::uint64_t> usenum_by_stars(std::span<const RuleIndex> index_table, unsigned n,
                                                  std::size_t rules, const EnumerationLimits& limits = {}) {
  limits.require_restrictions(n, "usenum_by_stars");
  const std::size_t words = (rules + 63) / 64;
  const std::uint64_t cells = pow3(n);
  std::vector<std::uint64_t> sets(cells * words, 0);
  const auto code = detail::ternary_codes(n);
  for (std::size_t x = 0; x < index_table.size(); ++x) {
    const RuleIndex i = index_table[x] - 1;
    sets[code[x] * words + i / 64] |= std::uint64_t{1} << (i % 64);
  }
  std::uint64_t place = 1;
  for (unsigned j = 0; j < n; ++j, place *= 3) {
    const std::uint64_t span = place * 3;
    for (std::uint64_t hi = 0; hi < cells; hi += span) {
      for (std::uint64_t lo = 0; lo < place; ++lo) {
        const std::uint64_t a = (hi + lo) * words;
        const std::uint64_t b = (hi + place + lo) * words;
        const std::uint64_t d = (hi + 2 * place + lo) * words;
        for (std::size_t w = 0; w < words; ++w) sets[d + w] = sets[a + w] | sets[b + w];
      }
    }
  }
  std::vector<std::uint64_t> by_stars(n + 1, 0);
  detail::for_each_code(n, [&](std::uint64_t c, unsigned stars) {
    std::uint64_t count = 0;
    for (std::size_t w = 0; w < words; ++w) count += static_cast<std::uint64_t>(std::popcount(sets[c * words + w]));
    by_stars[stars] += count;
  });
  return by_stars;
}

}  // namespace dlc

#endif  // DLC_SUBCUBE_HPP
