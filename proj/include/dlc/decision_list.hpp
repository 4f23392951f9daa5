#ifndef DLC_DECISION_LIST_HPP
#define DLC_DECISION_LIST_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dlc/limits.hpp"

namespace dlc {

/// 1-based variable index, x_1 .. x_n.
using VarIndex = std::uint32_t;
/// 1-based rule position, 1 .. m.
using RuleIndex = std::uint32_t;

inline constexpr std::uint64_t var_bit(VarIndex v) noexcept { return std::uint64_t{1} << (v - 1); }

inline constexpr std::uint64_t low_mask(unsigned bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

/// Calls `fn(VarIndex)` for every set bit of `mask`, lowest first.
template <class Fn>
void for_each_var(std::uint64_t mask, Fn&& fn) {
  while (mask != 0) {
    fn(static_cast<VarIndex>(std::countr_zero(mask) + 1));
    mask &= mask - 1;
  }
}

struct Literal {
  VarIndex var;
  bool positive;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Conjunction of literals. The empty term is the constant True.
class Term {
 public:
  Term() = default;

  /// Throws std::invalid_argument if a variable repeats or is 0 / above kMaxVars.
  Term(std::vector<VarIndex> pos, std::vector<VarIndex> neg) {
    for (VarIndex v : pos) add(v, true);
    for (VarIndex v : neg) add(v, false);
  }

  static Term from_masks(std::uint64_t pos, std::uint64_t neg) {
    if ((pos & neg) != 0) throw std::invalid_argument("term masks overlap");
    Term t;
    t.pos_ = pos;
    t.neg_ = neg;
    return t;
  }

  std::uint64_t pos_mask() const noexcept { return pos_; }
  std::uint64_t neg_mask() const noexcept { return neg_; }
  std::uint64_t vars_mask() const noexcept { return pos_ | neg_; }
  unsigned width() const noexcept { return static_cast<unsigned>(std::popcount(pos_ | neg_)); }
  bool empty() const noexcept { return (pos_ | neg_) == 0; }
  VarIndex max_var() const noexcept {
    const auto all = pos_ | neg_;
    return all == 0 ? 0 : static_cast<VarIndex>(64 - std::countl_zero(all));
  }

  std::vector<VarIndex> pos() const { return vars_of(pos_); }
  std::vector<VarIndex> neg() const { return vars_of(neg_); }

  /// Literals in canonical order: ascending variable index.
  std::vector<Literal> literals() const {
    std::vector<Literal> out;
    out.reserve(width());
    for_each_var(pos_ | neg_, [&](VarIndex v) { out.push_back({v, (pos_ & var_bit(v)) != 0}); });
    return out;
  }

  bool satisfied_by(std::uint64_t bits) const noexcept {
    return (bits & pos_) == pos_ && (bits & neg_) == 0;
  }

  friend bool operator==(const Term&, const Term&) = default;

 private:
  static std::vector<VarIndex> vars_of(std::uint64_t mask) {
    std::vector<VarIndex> out;
    for_each_var(mask, [&](VarIndex v) { out.push_back(v); });
    return out;
  }

  void add(VarIndex v, bool positive) {
    if (v == 0 || v > kMaxVars) {
      throw std::invalid_argument("variable index " + std::to_string(v) + " out of range");
    }
    if (((pos_ | neg_) & var_bit(v)) != 0) {
      throw std::invalid_argument("duplicate variable x" + std::to_string(v));
    }
    (positive ? pos_ : neg_) |= var_bit(v);
  }

  std::uint64_t pos_ = 0;
  std::uint64_t neg_ = 0;
};

struct Rule {
  Term term;
  std::string value;
  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Raised when a list violates a structural invariant; names the offending rule.
class InvalidList : public std::invalid_argument {
 public:
  InvalidList(std::string message, std::size_t rule)
      : std::invalid_argument(std::move(message)), rule_(rule) {}
  /// 1-based rule position, or 0 when the problem is not tied to one rule.
  std::size_t rule() const noexcept { return rule_; }

 private:
  std::size_t rule_;
};

/// Packed assignment x in {0,1}^n; bit j-1 holds x_j.
class Assignment {
 public:
  Assignment() = default;
  Assignment(unsigned n, std::uint64_t bits) : n_(n), bits_(bits & low_mask(n)) {
    if (n > kMaxVars) throw std::invalid_argument("assignment longer than 64 variables");
  }

  /// Parses "0"/"1" characters; character k is x_{k+1}.
  static Assignment parse(std::string_view text) {
    if (text.size() > kMaxVars) throw std::invalid_argument("assignment longer than 64 variables");
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < text.size(); ++k) {
      if (text[k] == '1') {
        bits |= std::uint64_t{1} << k;
      } else if (text[k] != '0') {
        throw std::invalid_argument("assignment characters must be 0 or 1");
      }
    }
    return Assignment(static_cast<unsigned>(text.size()), bits);
  }

  unsigned size() const noexcept { return n_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool operator[](VarIndex v) const noexcept { return (bits_ & var_bit(v)) != 0; }

  std::string to_string() const {
    std::string out(n_, '0');
    for (unsigned k = 0; k < n_; ++k) {
      if ((bits_ >> k) & 1) out[k] = '1';
    }
    return out;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  unsigned n_ = 0;
  std::uint64_t bits_ = 0;
};

/// Ordered rule list whose last rule has the empty (True) term.
class DecisionList {
 public:
  /// Validates: n <= 64, at least one rule, variables within [1, n],
  /// and a trailing default rule.
  DecisionList(unsigned n, std::vector<Rule> rules) : n_(n), rules_(std::move(rules)) {
    if (n_ > kMaxVars) throw InvalidList("n = " + std::to_string(n_) + " exceeds 64 variables", 0);
    if (rules_.empty()) throw InvalidList("missing trailing True rule: list is empty", 0);
    const std::uint64_t allowed = low_mask(n_);
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const Term& t = rules_[i].term;
      if ((t.vars_mask() & ~allowed) != 0) {
        throw InvalidList("rule " + std::to_string(i + 1) + ": variable index x" +
                              std::to_string(t.max_var()) + " out of range [1, " +
                              std::to_string(n_) + "]",
                          i + 1);
      }
      width_ = std::max(width_, t.width());
    }
    if (!rules_.back().term.empty()) {
      throw InvalidList("rule " + std::to_string(rules_.size()) +
                            ": missing trailing True rule (last term must be empty)",
                        rules_.size());
    }
  }

  unsigned n() const noexcept { return n_; }
  std::size_t size() const noexcept { return rules_.size(); }
  unsigned width() const noexcept { return width_; }
  std::span<const Rule> rules() const noexcept { return rules_; }
  const Rule& rule(RuleIndex i) const { return rules_.at(i - 1); }

  /// Ind L(x): smallest i with C_i(x) = 1.
  RuleIndex index_of(std::uint64_t bits) const noexcept {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (rules_[i].term.satisfied_by(bits)) return static_cast<RuleIndex>(i + 1);
    }
    return static_cast<RuleIndex>(rules_.size());  // unreachable: default rule is True
  }

  RuleIndex index_of(const Assignment& x) const {
    require_length(x.size());
    return index_of(x.bits());
  }

  const std::string& eval(const Assignment& x) const { return rules_[index_of(x) - 1].value; }
  const std::string& eval(std::uint64_t bits) const { return rules_[index_of(bits) - 1].value; }

  /// Variables mentioned by any rule.
  std::uint64_t support() const noexcept {
    std::uint64_t all = 0;
    for (const Rule& r : rules_) all |= r.term.vars_mask();
    return all;
  }

  /// L|_J with J ascending and containing m.
  DecisionList sublist(std::span<const RuleIndex> kept) const {
    if (kept.empty() || kept.back() != size()) {
      throw std::invalid_argument("sublist must keep the default rule m");
    }
    std::vector<Rule> out;
    out.reserve(kept.size());
    RuleIndex previous = 0;
    for (RuleIndex i : kept) {
      if (i <= previous) throw std::invalid_argument("sublist indices must be strictly ascending");
      out.push_back(rule(i));
      previous = i;
    }
    return DecisionList(n_, std::move(out));
  }

  friend bool operator==(const DecisionList& a, const DecisionList& b) {
    return a.n_ == b.n_ && a.rules_ == b.rules_;
  }

 private:
  void require_length(unsigned len) const {
    if (len != n_) {
      throw std::invalid_argument("assignment has " + std::to_string(len) +
                                  " variables, list has " + std::to_string(n_));
    }
  }

  unsigned n_;
  std::vector<Rule> rules_;
  unsigned width_ = 0;
};

/// True iff every non-default value is "1" and the default value is "0".
inline bool is_dnf_shaped(const DecisionList& list) {
  const auto rules = list.rules();
  for (std::size_t i = 0; i + 1 < rules.size(); ++i) {
    if (rules[i].value != "1") return false;
  }
  return rules.back().value == "0";
}

}  // namespace dlc

#endif  // DLC_DECISION_LIST_HPP
