#ifndef DLC_KERNEL_HPP
#define DLC_KERNEL_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dlc/decision_list.hpp"
#include "dlc/modes.hpp"
#include "dlc/parallel.hpp"

// Bit-parallel evaluation: 64 consecutive assignments form one block, one
// assignment per bit lane. Variable j < 6 varies inside the block following a
// fixed lane pattern; higher variables are constant across the block.

namespace dlc {

/// A term over compact variable positions 0 .. vars-1, tagged with the rule
/// it came from.
struct LaneTerm {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  RuleIndex rule = 0;
};

namespace detail {

inline constexpr std::array<std::uint64_t, 6> kLanePattern = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};

inline std::uint64_t block_count(unsigned vars) { return vars <= 6 ? 1 : std::uint64_t{1} << (vars - 6); }

inline std::uint64_t valid_lanes(unsigned vars) {
  return vars >= 6 ? ~std::uint64_t{0} : low_mask(1u << vars);
}

inline std::vector<LaneTerm> lane_terms(const DecisionList& list) {
  std::vector<LaneTerm> terms;
  terms.reserve(list.size());
  RuleIndex i = 0;
  for (const Rule& r : list.rules()) {
    ++i;
    terms.push_back({r.term.pos_mask(), r.term.neg_mask(), i});
  }
  return terms;
}

}  // namespace detail

/// Calls `visit(rule, lanes)` for the lanes of `block` whose first
/// satisfied term is `rule`, in term order. Stops once every lane is hit.
/// Lanes never hit by any term are left unreported.
template <class Visit>
void scan_block(std::span<const LaneTerm> terms, unsigned vars, std::uint64_t block, Visit&& visit) {
  std::array<std::uint64_t, 64> lane{};
  for (unsigned j = 0; j < vars; ++j) {
    lane[j] = j < 6 ? detail::kLanePattern[j] : (((block >> (j - 6)) & 1) ? ~std::uint64_t{0} : 0);
  }
  const std::uint64_t valid = detail::valid_lanes(vars);
  std::uint64_t done = 0;
  for (const LaneTerm& t : terms) {
    std::uint64_t sat = valid & ~done;
    for (std::uint64_t m = t.pos; m != 0 && sat != 0; m &= m - 1) sat &= lane[std::countr_zero(m)];
    for (std::uint64_t m = t.neg; m != 0 && sat != 0; m &= m - 1) sat &= ~lane[std::countr_zero(m)];
    if (sat != 0) {
      visit(t.rule, sat);
      done |= sat;
      if (done == valid) return;
    }
  }
}

inline constexpr std::uint64_t kBlocksPerChunk = 256;

/// Ind L(x) for all 2^n assignments; entry x (bit j-1 = x_j) holds the index.
inline std::vector<RuleIndex> batch_index_of(const DecisionList& list, const ExactMode& mode = {}) {
  const unsigned n = list.n();
  mode.limits.require_assignments(n, "batch_index_of");
  const auto terms = detail::lane_terms(list);
  std::vector<RuleIndex> out(std::size_t{1} << n, 0);
  const std::uint64_t blocks = detail::block_count(n);
  const std::uint64_t chunks = (blocks + kBlocksPerChunk - 1) / kBlocksPerChunk;
  parallel_chunks(chunks, mode.workers, [&](std::uint64_t c) {
    const std::uint64_t end = std::min(blocks, (c + 1) * kBlocksPerChunk);
    for (std::uint64_t b = c * kBlocksPerChunk; b < end; ++b) {
      scan_block(terms, n, b, [&](RuleIndex rule, std::uint64_t lanes) {
        for (; lanes != 0; lanes &= lanes - 1) out[b * 64 + std::countr_zero(lanes)] = rule;
      });
    }
  });
  return out;
}

/// Number of assignments hitting each rule; entry i-1 belongs to rule i.
inline std::vector<std::uint64_t> hit_counts(const DecisionList& list, const ExactMode& mode = {}) {
  const unsigned n = list.n();
  mode.limits.require_assignments(n, "hit_counts");
  const auto terms = detail::lane_terms(list);
  const std::uint64_t blocks = detail::block_count(n);
  const std::uint64_t chunks = (blocks + kBlocksPerChunk - 1) / kBlocksPerChunk;
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(list.size(), 0));
  parallel_chunks(chunks, mode.workers, [&](std::uint64_t c) {
    auto& counts = partial[c];
    const std::uint64_t end = std::min(blocks, (c + 1) * kBlocksPerChunk);
    for (std::uint64_t b = c * kBlocksPerChunk; b < end; ++b) {
      scan_block(terms, n, b, [&](RuleIndex rule, std::uint64_t lanes) {
        counts[rule - 1] += static_cast<std::uint64_t>(std::popcount(lanes));
      });
    }
  });
  std::vector<std::uint64_t> total(list.size(), 0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += p[i];
  }
  return total;
}

/// Number of assignments on which the two lists output different labels.
inline std::uint64_t mismatch_count(const DecisionList& a, const DecisionList& b,
                                    const ExactMode& mode = {}) {
  if (a.n() != b.n()) throw std::invalid_argument("lists have different variable counts");
  const unsigned n = a.n();
  mode.limits.require_assignments(n, "distance");
  // Intern labels so comparisons are integer compares.
  std::unordered_map<std::string, std::uint32_t> ids;
  auto label_ids = [&](const DecisionList& l) {
    std::vector<std::uint32_t> out;
    for (const Rule& r : l.rules()) out.push_back(ids.try_emplace(r.value, ids.size()).first->second);
    return out;
  };
  const auto ids_a = label_ids(a);
  const auto ids_b = label_ids(b);
  const auto terms_a = detail::lane_terms(a);
  const auto terms_b = detail::lane_terms(b);
  const std::uint64_t blocks = detail::block_count(n);
  const std::uint64_t chunks = (blocks + kBlocksPerChunk - 1) / kBlocksPerChunk;
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_chunks(chunks, mode.workers, [&](std::uint64_t c) {
    std::array<std::uint32_t, 64> la{};
    std::array<std::uint32_t, 64> lb{};
    const std::uint64_t end = std::min(blocks, (c + 1) * kBlocksPerChunk);
    for (std::uint64_t blk = c * kBlocksPerChunk; blk < end; ++blk) {
      scan_block(terms_a, n, blk, [&](RuleIndex rule, std::uint64_t lanes) {
        for (; lanes != 0; lanes &= lanes - 1) la[std::countr_zero(lanes)] = ids_a[rule - 1];
      });
      scan_block(terms_b, n, blk, [&](RuleIndex rule, std::uint64_t lanes) {
        for (; lanes != 0; lanes &= lanes - 1) lb[std::countr_zero(lanes)] = ids_b[rule - 1];
      });
      const std::uint64_t valid = detail::valid_lanes(n);
      for (std::uint64_t m = valid; m != 0; m &= m - 1) {
        const int lane = std::countr_zero(m);
        if (la[lane] != lb[lane]) ++partial[c];
      }
    }
  });
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

}  // namespace dlc

#endif  // DLC_KERNEL_HPP
