#ifndef DLC_USEFULNESS_HPP
#define DLC_USEFULNESS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dlc/decision_list.hpp"
#include "dlc/kernel.hpp"
#include "dlc/restriction.hpp"

namespace dlc {

enum class UsefulnessSearch {
  Exhaustive,    ///< scan every completion of the star cells
  Backtracking,  ///< per-index search over variables of rules 1..i
  Auto,          ///< exhaustive up to 12 stars, backtracking beyond
};

namespace detail {

/// Maps star cells to consecutive positions 0 .. s-1.
inline std::uint64_t compact(std::uint64_t mask, std::uint64_t stars) {
  std::uint64_t out = 0;
  unsigned pos = 0;
  for (; stars != 0; stars &= stars - 1, ++pos) {
    if (mask & stars & (0 - stars)) out |= std::uint64_t{1} << pos;
  }
  return out;
}

inline std::vector<bool> useful_exhaustive(const RestrictedList& r, const EnumerationLimits& limits) {
  const std::uint64_t stars = r.restriction().star_mask();
  const unsigned free_vars = static_cast<unsigned>(std::popcount(stars));
  limits.require_assignments(free_vars, "useful_indices (exhaustive)");
  std::vector<LaneTerm> terms;
  RuleIndex i = 0;
  for (const auto& s : r.states()) {
    ++i;
    if (s.status == RuleStatus::Contradicted) continue;
    terms.push_back({compact(s.term.pos_mask(), stars), compact(s.term.neg_mask(), stars), i});
    if (s.status == RuleStatus::Satisfied) break;  // nothing after it is reachable
  }
  std::vector<bool> hit(r.size(), false);
  const std::uint64_t blocks = detail::block_count(free_vars);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    scan_block(terms, free_vars, b, [&](RuleIndex rule, std::uint64_t) { hit[rule - 1] = true; });
  }
  return hit;
}

class UsefulSearch {
 public:
  UsefulSearch(const RestrictedList& r, RuleIndex target) {
    const auto& states = r.states();
    for (RuleIndex j = 1; j < target; ++j) {
      const auto& s = states[j - 1];
      if (s.status == RuleStatus::Satisfied) {
        blocked_ = true;
        return;
      }
      if (s.status == RuleStatus::Live) terms_.push_back({s.term.pos_mask(), s.term.neg_mask()});
    }
    const Term& t = states[target - 1].term;
    assigned_ = t.vars_mask();
    values_ = t.pos_mask();
  }

  bool run() { return !blocked_ && search(assigned_, values_); }

 private:
  struct Masks {
    std::uint64_t pos;
    std::uint64_t neg;
  };

  // Each earlier term must end up with a false literal.
  bool search(std::uint64_t assigned, std::uint64_t values) const {
    const Masks* pick = nullptr;
    int best = 65;
    for (const Masks& t : terms_) {
      const std::uint64_t set_true = assigned & values;
      const std::uint64_t set_false = assigned & ~values;
      if ((t.pos & set_false) != 0 || (t.neg & set_true) != 0) continue;  // already false
      const int open = std::popcount((t.pos | t.neg) & ~assigned);
      if (open == 0) return false;  // all literals true
      if (open < best) {
        best = open;
        pick = &t;
      }
    }
    if (pick == nullptr) return true;
    std::uint64_t open = (pick->pos | pick->neg) & ~assigned;
    // Branch k: literals before k true, literal k false.
    for (; open != 0; open &= open - 1) {
      const std::uint64_t bit = open & (0 - open);
      const bool positive = (pick->pos & bit) != 0;
      const std::uint64_t falsify = positive ? (values & ~bit) : (values | bit);
      if (search(assigned | bit, falsify)) return true;
      values = positive ? (values | bit) : (values & ~bit);
      assigned |= bit;
    }
    return false;
  }

  std::vector<Masks> terms_;
  std::uint64_t assigned_ = 0;
  std::uint64_t values_ = 0;
  bool blocked_ = false;
};

}  // namespace detail

/// Whether some completion of the restriction has index i.
inline bool is_useful(const RestrictedList& r, RuleIndex i) {
  if (i == 0 || i > r.size()) throw std::out_of_range("rule index out of range");
  if (r.status(i) == RuleStatus::Contradicted) return false;
  return detail::UsefulSearch(r, i).run();
}

/// Indicator per rule (entry i-1 for rule i) of usefulness in the restricted list.
inline std::vector<bool> useful_mask(const RestrictedList& r,
                                     UsefulnessSearch search = UsefulnessSearch::Exhaustive,
                                     const EnumerationLimits& limits = {}) {
  if (search == UsefulnessSearch::Auto) {
    search = r.restriction().stars() <= 12 ? UsefulnessSearch::Exhaustive : UsefulnessSearch::Backtracking;
  }
  if (search == UsefulnessSearch::Exhaustive) return detail::useful_exhaustive(r, limits);
  std::vector<bool> out(r.size(), false);
  for (RuleIndex i = 1; i <= r.size(); ++i) {
    out[i - 1] = is_useful(r, i);
    if (r.status(i) == RuleStatus::Satisfied) break;
  }
  return out;
}

inline std::vector<RuleIndex> useful_indices(const RestrictedList& r,
                                             UsefulnessSearch search = UsefulnessSearch::Exhaustive,
                                             const EnumerationLimits& limits = {}) {
  const auto mask = useful_mask(r, search, limits);
  std::vector<RuleIndex> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(static_cast<RuleIndex>(i + 1));
  }
  return out;
}

inline std::vector<RuleIndex> useful_indices(const DecisionList& list,
                                             UsefulnessSearch search = UsefulnessSearch::Exhaustive,
                                             const EnumerationLimits& limits = {}) {
  return useful_indices(restrict(list, Restriction::all_stars(list.n())), search, limits);
}

inline std::size_t usenum(const RestrictedList& r, UsefulnessSearch search = UsefulnessSearch::Exhaustive,
                          const EnumerationLimits& limits = {}) {
  const auto mask = useful_mask(r, search, limits);
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

inline std::size_t usenum(const DecisionList& list, UsefulnessSearch search = UsefulnessSearch::Exhaustive,
                          const EnumerationLimits& limits = {}) {
  return usenum(restrict(list, Restriction::all_stars(list.n())), search, limits);
}

}  // namespace dlc

#endif  // DLC_USEFULNESS_HPP
