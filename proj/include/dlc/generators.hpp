#ifndef DLC_GENERATORS_HPP
#define DLC_GENERATORS_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlc/decision_list.hpp"
#include "dlc/random.hpp"

namespace dlc {

/// Read-once DNF: t_terms disjoint positive terms of width w, value "1",
/// default "0". n = t_terms * w.
inline DecisionList gen_tribes(unsigned t_terms, unsigned w) {
  if (t_terms < 1 || w < 1) throw std::invalid_argument("gen_tribes: terms and width must be at least 1");
  if (static_cast<std::uint64_t>(t_terms) * w > kMaxVars) {
    throw std::invalid_argument("gen_tribes: terms * width exceeds 64 variables");
  }
  std::vector<Rule> rules;
  for (unsigned j = 0; j < t_terms; ++j) {
    std::vector<VarIndex> pos;
    for (unsigned b = 1; b <= w; ++b) pos.push_back(j * w + b);
    rules.push_back({Term(std::move(pos), {}), "1"});
  }
  rules.push_back({Term{}, "0"});
  return DecisionList(t_terms * w, std::move(rules));
}

/// All w-subsets of [n] in lexicographic order.
inline std::vector<std::vector<VarIndex>> lexicographic_subsets(unsigned n, unsigned w) {
  std::vector<std::vector<VarIndex>> out;
  if (w > n) return out;
  std::vector<VarIndex> cur(w);
  for (unsigned k = 0; k < w; ++k) cur[k] = k + 1;
  while (true) {
    out.push_back(cur);
    int k = static_cast<int>(w) - 1;
    while (k >= 0 && cur[k] == n - w + 1 + static_cast<unsigned>(k)) --k;
    if (k < 0) break;
    ++cur[k];
    for (unsigned r = static_cast<unsigned>(k) + 1; r < w; ++r) cur[r] = cur[r - 1] + 1;
  }
  return out;
}

namespace detail {

inline void require_threshold_params(unsigned n, unsigned w) {
  if (!(n > w && w >= 1)) throw std::invalid_argument("threshold family needs n > w >= 1");
  if (n > kMaxVars) throw std::invalid_argument("threshold family: n exceeds 64 variables");
  if (n > 30) throw std::invalid_argument("threshold family: n above 30 yields too many terms");
}

}  // namespace detail

/// L_v: one monotone term per w-subset (lexicographic), values from v, default "0".
inline DecisionList gen_lv(unsigned n, unsigned w, const std::vector<bool>& v) {
  detail::require_threshold_params(n, w);
  auto subsets = lexicographic_subsets(n, w);
  if (v.size() != subsets.size()) {
    throw std::invalid_argument("gen_lv: value vector has " + std::to_string(v.size()) + " entries, expected C(" +
                                std::to_string(n) + "," + std::to_string(w) + ") = " + std::to_string(subsets.size()));
  }
  std::vector<Rule> rules;
  rules.reserve(subsets.size() + 1);
  for (std::size_t i = 0; i < subsets.size(); ++i) rules.push_back({Term(std::move(subsets[i]), {}), v[i] ? "1" : "0"});
  rules.push_back({Term{}, "0"});
  return DecisionList(n, std::move(rules));
}

/// DNF of all monotone width-w terms; computes [popcount(x) >= w].
inline DecisionList gen_threshold_dnf(unsigned n, unsigned w) {
  detail::require_threshold_params(n, w);
  const auto count = lexicographic_subsets(n, w).size();
  return gen_lv(n, w, std::vector<bool>(count, true));
}

/// One full-width term per assignment of w variables (assignment order,
/// x_1 least significant) with the table's value, plus an unreachable
/// default "0".
inline DecisionList gen_from_truth_table(const std::vector<std::string>& table) {
  const std::size_t size = table.size();
  if (size == 0 || (size & (size - 1)) != 0) throw std::invalid_argument("truth table size must be a power of two");
  const auto w = static_cast<unsigned>(std::countr_zero(size));
  if (w > 16) throw std::invalid_argument("truth table limited to 16 variables");
  std::vector<Rule> rules;
  rules.reserve(size + 1);
  const std::uint64_t all = low_mask(w);
  for (std::uint64_t x = 0; x < size; ++x) rules.push_back({Term::from_masks(x, all & ~x), table[x]});
  rules.push_back({Term{}, "0"});
  return DecisionList(w, std::move(rules));
}

/// Table given as a string of single-character labels, e.g. "0110" for XOR.
inline DecisionList gen_from_truth_table(std::string_view bits) {
  std::vector<std::string> table;
  for (char c : bits) table.emplace_back(1, c);
  return gen_from_truth_table(table);
}

/// m-1 random rules (width uniform in [0, w], distinct variables, random
/// signs, labels "0".."alphabet-1") plus a default with a random label.
inline DecisionList gen_random_list(unsigned n, unsigned w, std::size_t m, unsigned alphabet, RandomSource& rng) {
  if (n > kMaxVars) throw std::invalid_argument("gen_random_list: n exceeds 64 variables");
  if (w > n) throw std::invalid_argument("gen_random_list: width exceeds n");
  if (m < 1) throw std::invalid_argument("gen_random_list: need at least one rule");
  if (alphabet < 1) throw std::invalid_argument("gen_random_list: alphabet must be non-empty");
  std::vector<Rule> rules;
  rules.reserve(m);
  std::array<VarIndex, kMaxVars> vars{};
  for (std::size_t r = 0; r + 1 < m; ++r) {
    const auto width = static_cast<unsigned>(rng.below(w + 1));
    for (unsigned j = 0; j < n; ++j) vars[j] = j + 1;
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
    for (unsigned j = 0; j < width; ++j) {
      std::swap(vars[j], vars[j + rng.below(n - j)]);
      (rng.below(2) != 0 ? pos : neg) |= var_bit(vars[j]);
    }
    rules.push_back({Term::from_masks(pos, neg), std::to_string(rng.below(alphabet))});
  }
  rules.push_back({Term{}, std::to_string(rng.below(alphabet))});
  return DecisionList(n, std::move(rules));
}

/// Parameters for a reproducible random corpus: list c draws n in
/// [min_n, max_n], width cap min(max_w, n), m in [1, max_m], from
/// RandomSource(seed).split(c).
struct CorpusSpec {
  unsigned min_n = 1;
  unsigned max_n = 8;
  unsigned max_w = 3;
  std::size_t max_m = 12;
  unsigned alphabet = 3;
  std::size_t count = 100;
  std::uint64_t seed = kDefaultSeed;
};

inline DecisionList corpus_list(const CorpusSpec& spec, std::size_t c) {
  if (spec.min_n > spec.max_n) throw std::invalid_argument("corpus: min_n exceeds max_n");
  RandomSource rng = RandomSource(spec.seed).split(c);
  const auto n = static_cast<unsigned>(rng.between(spec.min_n, spec.max_n));
  const unsigned w = std::min(spec.max_w, n);
  const auto m = static_cast<std::size_t>(rng.between(1, std::max<std::size_t>(1, spec.max_m)));
  return gen_random_list(n, w, m, spec.alphabet, rng);
}

inline std::vector<DecisionList> random_corpus(const CorpusSpec& spec) {
  std::vector<DecisionList> out;
  out.reserve(spec.count);
  for (std::size_t c = 0; c < spec.count; ++c) out.push_back(corpus_list(spec, c));
  return out;
}

}  // namespace dlc

#endif  // DLC_GENERATORS_HPP
