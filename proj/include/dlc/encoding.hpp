#ifndef DLC_ENCODING_HPP
#define DLC_ENCODING_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "dlc/decision_list.hpp"
#include "dlc/rational.hpp"
#include "dlc/restriction.hpp"
#include "dlc/sampling.hpp"
#include "dlc/usefulness.hpp"

// Injection (rho, s) -> (rho', a): rho has k stars, s ranks a useful rule of
// L restricted to rho. Encoding fixes the star cells of that rule's term so
// the term is satisfied and records, literal by literal in ascending variable
// order, whether the cell was already fixed (Old) or newly set (New).

namespace dlc {

enum class Tag : std::uint8_t { Old, New };

struct CodePair {
  Restriction rho;
  std::size_t s = 0;  ///< 1-based rank among useful indices
  friend bool operator==(const CodePair&, const CodePair&) = default;
};

struct EncodedPair {
  Restriction rho_prime;
  std::vector<Tag> tags;
  friend bool operator==(const EncodedPair&, const EncodedPair&) = default;

  std::string tag_string() const {
    std::string out;
    for (Tag t : tags) out += t == Tag::New ? 'N' : 'O';
    return out;
  }
  std::string key() const { return rho_prime.to_string() + "|" + tag_string(); }
};

/// Input to decode that no encode call could have produced.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `tag_length` defaults to width(L) and must be at least the width of the
/// selected term; padding positions are Old.
inline EncodedPair encode(const DecisionList& list, const CodePair& pair,
                          std::optional<unsigned> tag_length = std::nullopt) {
  const auto restricted = restrict(list, pair.rho);
  const auto useful = useful_indices(restricted, UsefulnessSearch::Auto);
  if (pair.s < 1 || pair.s > useful.size()) {
    throw std::out_of_range("encode: s = " + std::to_string(pair.s) + " outside [1, " +
                            std::to_string(useful.size()) + "]");
  }
  const RuleIndex j = useful[pair.s - 1];
  const Term& term = list.rule(j).term;
  const unsigned length = tag_length.value_or(list.width());
  if (length < term.width()) {
    throw std::invalid_argument("encode: tag length " + std::to_string(length) + " shorter than term width " +
                                std::to_string(term.width()));
  }
  EncodedPair out{pair.rho, {}};
  out.tags.reserve(length);
  for (const Literal& lit : term.literals()) {
    if (pair.rho[lit.var] != Cell::Star) {
      out.tags.push_back(Tag::Old);
    } else {
      out.tags.push_back(Tag::New);
      out.rho_prime = out.rho_prime.with(lit.var, lit.positive ? Cell::One : Cell::Zero);
    }
  }
  out.tags.resize(length, Tag::Old);
  return out;
}

/// Inverse of encode; validates its input instead of assuming membership in
/// the image.
inline CodePair decode(const DecisionList& list, const EncodedPair& enc) {
  const auto after = restrict(list, enc.rho_prime);
  const RuleIndex j = after.first_satisfied();
  const auto literals = list.rule(j).term.literals();
  if (enc.tags.size() < literals.size()) {
    throw DecodeError("decode: " + std::to_string(enc.tags.size()) + " tags for a term of width " +
                      std::to_string(literals.size()));
  }
  if (j == list.size()) {
    for (Tag t : enc.tags) {
      if (t == Tag::New) {
        throw DecodeError("decode: no satisfied term among non-default rules, yet the tags mark new cells");
      }
    }
  }
  Restriction rho = enc.rho_prime;
  for (std::size_t k = 0; k < literals.size(); ++k) {
    if (enc.tags[k] != Tag::New) continue;
    if (rho[literals[k].var] == Cell::Star) {
      throw DecodeError("decode: New tag points at star cell x" + std::to_string(literals[k].var));
    }
    rho = rho.with(literals[k].var, Cell::Star);
  }
  const auto useful = useful_indices(restrict(list, rho), UsefulnessSearch::Auto);
  for (std::size_t r = 0; r < useful.size(); ++r) {
    if (useful[r] == j) return {rho, r + 1};
  }
  throw DecodeError("decode: rule " + std::to_string(j) + " is not useful under the decoded restriction");
}

struct ExhaustiveAudit {};
struct SampledAudit {
  std::uint64_t samples = 10000;
  RandomSource rng{};
};
using AuditMode = std::variant<ExhaustiveAudit, SampledAudit>;

struct AuditReport {
  unsigned n = 0;
  unsigned k = 0;
  unsigned w = 0;
  bool exhaustive = true;
  std::uint64_t u_size = 0;       ///< |U|, exhaustive mode
  std::uint64_t checked = 0;      ///< (rho, s) pairs round-tripped
  std::uint64_t failures = 0;     ///< decode(encode(x)) != x or decode threw
  std::uint64_t collisions = 0;   ///< distinct inputs with equal encodings
  std::vector<std::string> counterexamples;

  bool pass() const { return failures == 0 && collisions == 0; }
};

/// Round-trips every (rho, s) in U (or a sample of it) for star count k.
inline AuditReport roundtrip_audit(const DecisionList& list, unsigned k, const AuditMode& mode = ExhaustiveAudit{},
                                   const EnumerationLimits& limits = {}) {
  const unsigned n = list.n();
  if (k > n) throw std::invalid_argument("roundtrip_audit: k exceeds n");
  AuditReport report;
  report.n = n;
  report.k = k;
  report.w = list.width();
  report.exhaustive = std::holds_alternative<ExhaustiveAudit>(mode);

  std::unordered_set<std::string> seen;
  auto check = [&](const Restriction& rho, std::size_t s) {
    ++report.checked;
    const CodePair in{rho, s};
    const auto enc = encode(list, in);
    try {
      const auto out = decode(list, enc);
      if (!(out == in)) {
        ++report.failures;
        if (report.counterexamples.size() < 8) {
          report.counterexamples.push_back("rho=" + rho.to_string() + " s=" + std::to_string(s) +
                                           " decoded to rho=" + out.rho.to_string() +
                                           " s=" + std::to_string(out.s));
        }
      }
    } catch (const DecodeError& e) {
      ++report.failures;
      if (report.counterexamples.size() < 8) {
        report.counterexamples.push_back("rho=" + rho.to_string() + " s=" + std::to_string(s) + ": " + e.what());
      }
    }
    if (report.exhaustive && !seen.insert(enc.key()).second) ++report.collisions;
  };

  if (report.exhaustive) {
    limits.require_restrictions(n, "roundtrip_audit (exhaustive)");
    for_each_restriction_with_stars(n, k, [&](const Restriction& rho) {
      const auto u = usenum(restrict(list, rho), UsefulnessSearch::Auto, limits);
      report.u_size += u;
      for (std::size_t s = 1; s <= u; ++s) check(rho, s);
    });
    return report;
  }
  auto sampled = std::get<SampledAudit>(mode);
  for (std::uint64_t t = 0; t < sampled.samples; ++t) {
    const auto rho = sample_restriction(n, ExactStars{k}, sampled.rng);
    const auto u = usenum(restrict(list, rho), UsefulnessSearch::Auto, limits);
    check(rho, 1 + static_cast<std::size_t>(sampled.rng.below(u)));
  }
  return report;
}

struct CountingRecord {
  unsigned n = 0;
  unsigned k = 0;
  unsigned w = 0;
  BigInt u_size;
  BigInt v_size;
  /// E_{R(n,k)}[usenum] = |U| / |R(n,k)|.
  Rational expected_usenum;
  /// (4 / (1 - k/n))^w; absent when k = n.
  std::optional<Rational> usenum_bound;

  bool injection_ok() const { return u_size <= v_size; }
  bool usenum_ok() const { return !usenum_bound || expected_usenum <= *usenum_bound; }
  bool pass() const { return injection_ok() && usenum_ok(); }
};

/// |U| (summed directly over R(n,k)), |V| = (sum_{c=0..w} |R(n,k-c)|) * 2^w,
/// and the expected-usenum bound that follows from |U| <= |V|.
inline CountingRecord counting_bound(const DecisionList& list, unsigned k, const EnumerationLimits& limits = {}) {
  const unsigned n = list.n();
  if (k > n) throw std::invalid_argument("counting_bound: k exceeds n");
  limits.require_restrictions(n, "counting_bound");
  CountingRecord rec;
  rec.n = n;
  rec.k = k;
  rec.w = list.width();
  std::uint64_t u = 0;
  for_each_restriction_with_stars(n, k, [&](const Restriction& rho) {
    u += usenum(restrict(list, rho), UsefulnessSearch::Auto, limits);
  });
  rec.u_size = u;
  BigInt layers = 0;
  for (unsigned c = 0; c <= rec.w; ++c) layers += restriction_count(n, static_cast<long long>(k) - c);
  rec.v_size = layers << rec.w;
  rec.expected_usenum = make_rational(rec.u_size, restriction_count(n, k));
  if (k < n || n == 0) {
    // 4 / (1 - k/n) = 4n / (n - k); with n = 0 the ratio is taken as 4.
    const Rational base = n == 0 ? Rational(4) : make_rational(BigInt(4) * n, BigInt(n - k));
    Rational bound = 1;
    for (unsigned c = 0; c < rec.w; ++c) bound *= base;
    rec.usenum_bound = bound;
  }
  return rec;
}

}  // namespace dlc

#endif  // DLC_ENCODING_HPP
