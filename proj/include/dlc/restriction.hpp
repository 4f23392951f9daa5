#ifndef DLC_RESTRICTION_HPP
#define DLC_RESTRICTION_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dlc/decision_list.hpp"

namespace dlc {

enum class Cell : std::uint8_t { Zero, One, Star };

/// Partial assignment rho in {0,1,*}^n, packed as two masks.
class Restriction {
 public:
  Restriction() = default;

  /// `fixed` marks non-star cells; `values` gives their bits (ignored on stars).
  Restriction(unsigned n, std::uint64_t fixed, std::uint64_t values)
      : n_(n), fixed_(fixed & low_mask(n)), values_(values & fixed & low_mask(n)) {
    if (n > kMaxVars) throw std::invalid_argument("restriction longer than 64 variables");
  }

  static Restriction all_stars(unsigned n) { return Restriction(n, 0, 0); }

  /// Parses characters '0', '1', '*'; character k is x_{k+1}.
  static Restriction parse(std::string_view text) {
    if (text.size() > kMaxVars) throw std::invalid_argument("restriction longer than 64 variables");
    std::uint64_t fixed = 0;
    std::uint64_t values = 0;
    for (std::size_t k = 0; k < text.size(); ++k) {
      const std::uint64_t bit = std::uint64_t{1} << k;
      switch (text[k]) {
        case '0': fixed |= bit; break;
        case '1': fixed |= bit; values |= bit; break;
        case '*': break;
        default: throw std::invalid_argument("restriction characters must be 0, 1 or *");
      }
    }
    return Restriction(static_cast<unsigned>(text.size()), fixed, values);
  }

  unsigned size() const noexcept { return n_; }
  unsigned stars() const noexcept { return n_ - static_cast<unsigned>(std::popcount(fixed_)); }
  std::uint64_t fixed_mask() const noexcept { return fixed_; }
  std::uint64_t star_mask() const noexcept { return ~fixed_ & low_mask(n_); }
  std::uint64_t value_mask() const noexcept { return values_; }

  Cell operator[](VarIndex v) const noexcept {
    const auto bit = var_bit(v);
    if ((fixed_ & bit) == 0) return Cell::Star;
    return (values_ & bit) != 0 ? Cell::One : Cell::Zero;
  }

  Restriction with(VarIndex v, Cell cell) const {
    const auto bit = var_bit(v);
    switch (cell) {
      case Cell::Star: return Restriction(n_, fixed_ & ~bit, values_ & ~bit);
      case Cell::Zero: return Restriction(n_, fixed_ | bit, values_ & ~bit);
      case Cell::One: return Restriction(n_, fixed_ | bit, values_ | bit);
    }
    return *this;
  }

  /// Full assignment bits obtained by placing `free_bits` (already positioned
  /// on the star cells) into the restriction.
  std::uint64_t complete(std::uint64_t free_bits) const noexcept {
    return values_ | (free_bits & star_mask());
  }

  std::string to_string() const {
    std::string out(n_, '*');
    for (unsigned k = 0; k < n_; ++k) {
      if ((fixed_ >> k) & 1) out[k] = ((values_ >> k) & 1) ? '1' : '0';
    }
    return out;
  }

  friend bool operator==(const Restriction&, const Restriction&) = default;

 private:
  unsigned n_ = 0;
  std::uint64_t fixed_ = 0;
  std::uint64_t values_ = 0;
};

enum class RuleStatus : std::uint8_t {
  Live,          ///< some literals remain on star cells
  Contradicted,  ///< a fixed cell falsifies a literal
  Satisfied,     ///< every literal is fixed true (includes the empty term)
};

/// L restricted by rho. Holds a pointer to `base`, which must outlive it.
class RestrictedList {
 public:
  struct RuleState {
    RuleStatus status;
    Term term;  ///< simplified term over star cells; empty unless Live
  };

  RestrictedList(const DecisionList& base, const Restriction& rho) : base_(&base), rho_(rho) {
    if (rho.size() != base.n()) {
      throw std::invalid_argument("restriction has " + std::to_string(rho.size()) +
                                  " cells, list has " + std::to_string(base.n()) + " variables");
    }
    const std::uint64_t fixed = rho.fixed_mask();
    const std::uint64_t ones = rho.value_mask();
    const std::uint64_t zeros = fixed & ~ones;
    states_.reserve(base.size());
    for (const Rule& rule : base.rules()) {
      const Term& t = rule.term;
      if ((t.pos_mask() & zeros) != 0 || (t.neg_mask() & ones) != 0) {
        states_.push_back({RuleStatus::Contradicted, Term{}});
        continue;
      }
      const std::uint64_t free_pos = t.pos_mask() & ~fixed;
      const std::uint64_t free_neg = t.neg_mask() & ~fixed;
      if ((free_pos | free_neg) == 0) {
        states_.push_back({RuleStatus::Satisfied, Term{}});
      } else {
        states_.push_back({RuleStatus::Live, Term::from_masks(free_pos, free_neg)});
      }
    }
  }

  const DecisionList& base() const noexcept { return *base_; }
  const Restriction& restriction() const noexcept { return rho_; }
  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<RuleState>& states() const noexcept { return states_; }
  RuleStatus status(RuleIndex i) const { return states_.at(i - 1).status; }

  /// Simplified term of rule i; Contradicted rules have no term.
  const Term& simplified_term(RuleIndex i) const {
    const auto& s = states_.at(i - 1);
    if (s.status == RuleStatus::Contradicted) {
      throw std::logic_error("rule " + std::to_string(i) + " is contradicted under the restriction");
    }
    return s.term;
  }

  /// Index of the first non-contradicted rule whose simplified term holds
  /// on the star cells of `bits`; fixed cells of `bits` are ignored.
  RuleIndex index_of(std::uint64_t bits) const noexcept {
    for (std::size_t i = 0; i < states_.size(); ++i) {
      const auto& s = states_[i];
      if (s.status == RuleStatus::Satisfied) return static_cast<RuleIndex>(i + 1);
      if (s.status == RuleStatus::Live && s.term.satisfied_by(bits)) {
        return static_cast<RuleIndex>(i + 1);
      }
    }
    return static_cast<RuleIndex>(states_.size());
  }

  /// First rule whose status is Satisfied (always exists).
  RuleIndex first_satisfied() const noexcept {
    for (std::size_t i = 0; i < states_.size(); ++i) {
      if (states_[i].status == RuleStatus::Satisfied) return static_cast<RuleIndex>(i + 1);
    }
    return static_cast<RuleIndex>(states_.size());
  }

 private:
  const DecisionList* base_;
  Restriction rho_;
  std::vector<RuleState> states_;
};

inline RestrictedList restrict(const DecisionList& list, const Restriction& rho) {
  return RestrictedList(list, rho);
}

/// Visits every restriction with exactly k stars: star sets in increasing
/// numeric order, then fixed values in increasing submask order.
template <class Fn>
void for_each_restriction_with_stars(unsigned n, unsigned k, Fn&& fn) {
  if (k > n) return;
  const std::uint64_t all = low_mask(n);
  auto visit_stars = [&](std::uint64_t stars) {
    const std::uint64_t fixed = all & ~stars;
    std::uint64_t values = 0;
    while (true) {
      fn(Restriction(n, fixed, values));
      if (values == fixed) break;
      values = (values - fixed) & fixed;
    }
  };
  if (k == 0) {
    visit_stars(0);
    return;
  }
  std::uint64_t stars = low_mask(k);
  while (true) {
    visit_stars(stars);
    if (k == n) break;
    // Gosper's hack: next larger integer with the same popcount.
    const std::uint64_t low = stars & (0 - stars);
    const std::uint64_t ripple = stars + low;
    if (ripple == 0 || (ripple & ~all) != 0) break;
    stars = ripple | (((stars ^ ripple) >> 2) / low);
    if ((stars & ~all) != 0) break;
  }
}

/// Visits all 3^n restrictions.
template <class Fn>
void for_each_restriction(unsigned n, Fn&& fn) {
  for (unsigned k = 0; k <= n; ++k) for_each_restriction_with_stars(n, k, fn);
}

}  // namespace dlc

#endif  // DLC_RESTRICTION_HPP
