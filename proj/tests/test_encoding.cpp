#include <gtest/gtest.h>

#include <set>

#include "dlc/encoding.hpp"
#include "dlc/generators.hpp"
#include "dlc/io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dlc;
using dlc::testing::constant_list;
using dlc::testing::example_list;
using dlc::testing::single_literal_list;

namespace {

std::uint64_t oracle_u_size(const DecisionList& l, unsigned k) {
  std::uint64_t total = 0;
  for (const auto& rho : oracle::all_restrictions(l.n())) {
    if (oracle::star_count(rho) == k) total += oracle::useful(l, rho).size();
  }
  return total;
}

std::vector<DecisionList> audit_corpus(std::size_t count, unsigned max_n, std::uint64_t seed) {
  CorpusSpec spec;
  spec.max_n = max_n;
  spec.max_w = 3;
  spec.max_m = 10;
  spec.count = count;
  spec.seed = seed;
  return random_corpus(spec);
}

}  // namespace

TEST(Encode, SingleLiteralNewThenPad) {
  const auto l = single_literal_list(2);
  const auto enc = encode(l, {Restriction::parse("*0"), 1}, 2);
  EXPECT_EQ(enc.rho_prime.to_string(), "10");
  EXPECT_EQ(enc.tags, (std::vector<Tag>{Tag::New, Tag::Old}));
  EXPECT_EQ(enc.tag_string(), "NO");
}

TEST(Encode, DefaultRuleLeavesRestriction) {
  const auto l = single_literal_list(2);
  const auto enc = encode(l, {Restriction::parse("*0"), 2}, 2);
  EXPECT_EQ(enc.rho_prime.to_string(), "*0");
  EXPECT_EQ(enc.tag_string(), "OO");
}

TEST(Encode, ExampleSecondUsefulIsDefault) {
  const auto l = example_list();
  const auto enc = encode(l, {Restriction::parse("**"), 2});
  EXPECT_EQ(enc.rho_prime.to_string(), "**");
  EXPECT_EQ(enc.tags, std::vector<Tag>(l.width(), Tag::Old));
}

TEST(Encode, TagLengthDefaultsToWidth) {
  const auto l = single_literal_list(2);
  EXPECT_EQ(encode(l, {Restriction::parse("*0"), 1}).tags.size(), 1u);
  EXPECT_EQ(encode(example_list(), {Restriction::parse("**"), 1}).tags.size(), example_list().width());
}

TEST(Encode, Errors) {
  const auto l = single_literal_list(2);
  EXPECT_THROW(encode(l, {Restriction::parse("*0"), 0}), std::out_of_range);
  EXPECT_THROW(encode(l, {Restriction::parse("*0"), 3}), std::out_of_range);
  EXPECT_THROW(encode(l, {Restriction::parse("10"), 2}), std::out_of_range);
  EXPECT_THROW(encode(example_list(), {Restriction::parse("**"), 1}, 0), std::invalid_argument);
}

TEST(Decode, InvertsExamples) {
  const auto l = single_literal_list(2);
  const auto first = decode(l, encode(l, {Restriction::parse("*0"), 1}, 2));
  EXPECT_EQ(first.rho.to_string(), "*0");
  EXPECT_EQ(first.s, 1u);
  const auto second = decode(l, encode(l, {Restriction::parse("*0"), 2}, 2));
  EXPECT_EQ(second.rho.to_string(), "*0");
  EXPECT_EQ(second.s, 2u);
}

TEST(Decode, RejectsOutOfImageInputs) {
  const auto l = single_literal_list(2);
  // Default rule fires, yet a tag claims a newly fixed cell.
  EXPECT_THROW(decode(l, {Restriction::parse("00"), {Tag::New}}), DecodeError);
  // Rule 1 fires but the tag string is too short for its term.
  EXPECT_THROW(decode(l, {Restriction::parse("10"), {}}), DecodeError);
}

TEST(Decode, TagsSelectWhichCellsWereFreed) {
  const auto two = parse_decision_list(R"({"n":2,"rules":[{"pos":[1,2],"value":"1"},{"value":"0"}]})");
  EXPECT_EQ(decode(two, {Restriction::parse("11"), {Tag::New, Tag::New}}).rho.to_string(), "**");
  EXPECT_EQ(decode(two, {Restriction::parse("11"), {Tag::Old, Tag::New}}).rho.to_string(), "1*");
  EXPECT_EQ(decode(two, {Restriction::parse("11"), {Tag::Old, Tag::Old}}).rho.to_string(), "11");
}

TEST(Decode, RejectsNonUsefulRule) {
  // Under "1**" rule 3 is the first satisfied rule, but x3 or its negation always fires first.
  const auto l = parse_decision_list(
      R"({"n":3,"rules":[{"pos":[3],"value":"a"},{"neg":[3],"value":"b"},{"pos":[1],"value":"c"},{"value":"d"}]})");
  EXPECT_THROW(decode(l, {Restriction::parse("1**"), {Tag::Old}}), DecodeError);
}

TEST(RoundtripAudit, SingleLiteralUSize) {
  const auto report = roundtrip_audit(single_literal_list(2), 1);
  EXPECT_EQ(report.u_size, 6u);
  EXPECT_EQ(report.checked, 6u);
  EXPECT_TRUE(report.pass());
}

TEST(RoundtripAudit, ZeroStarsGivesAllAssignments) {
  for (const auto& l : audit_corpus(10, 6, 3)) {
    const auto report = roundtrip_audit(l, 0);
    EXPECT_EQ(report.u_size, std::uint64_t{1} << l.n());
    EXPECT_TRUE(report.pass());
  }
}

TEST(RoundtripAudit, ExampleAllStars) {
  const auto report = roundtrip_audit(example_list(), 2);
  EXPECT_EQ(report.u_size, 2u);
  EXPECT_TRUE(report.pass());
}

TEST(RoundtripAudit, CorpusMatchesOracleAndPasses) {
  for (const auto& l : audit_corpus(50, 6, 11)) {
    for (unsigned k = 0; k <= l.n(); ++k) {
      const auto report = roundtrip_audit(l, k);
      ASSERT_TRUE(report.pass()) << serialize(l) << " k=" << k << " "
                                 << (report.counterexamples.empty() ? "" : report.counterexamples[0]);
      EXPECT_EQ(report.u_size, oracle_u_size(l, k));
    }
  }
}

TEST(RoundtripAudit, SampledMode) {
  const auto l = gen_threshold_dnf(8, 3);
  const auto report = roundtrip_audit(l, 4, SampledAudit{2000, RandomSource(3)});
  EXPECT_FALSE(report.exhaustive);
  EXPECT_EQ(report.checked, 2000u);
  EXPECT_TRUE(report.pass());
}

TEST(RoundtripAudit, StarAccounting) {
  for (const auto& l : audit_corpus(20, 5, 13)) {
    for (unsigned k = 0; k <= l.n(); ++k) {
      for_each_restriction_with_stars(l.n(), k, [&](const Restriction& rho) {
        const auto u = usenum(restrict(l, rho));
        for (std::size_t s = 1; s <= u; ++s) {
          const auto enc = encode(l, {rho, s});
          std::size_t fresh = 0;
          for (Tag t : enc.tags) fresh += t == Tag::New;
          ASSERT_EQ(enc.rho_prime.stars() + fresh, rho.stars());
          ASSERT_LE(fresh, l.width());
        }
      });
    }
  }
}

TEST(RoundtripAudit, Errors) {
  EXPECT_THROW(roundtrip_audit(example_list(), 3), std::invalid_argument);
  EnumerationLimits limits;
  limits.restriction_vars = 2;
  EXPECT_THROW(roundtrip_audit(constant_list(3), 1, ExhaustiveAudit{}, limits), LimitError);
}

TEST(CountingBound, SingleLiteral) {
  const auto rec = counting_bound(single_literal_list(2), 1);
  EXPECT_EQ(rec.u_size, 6);
  EXPECT_EQ(rec.v_size, 16);
  EXPECT_EQ(rec.expected_usenum, Rational(3, 2));
  ASSERT_TRUE(rec.usenum_bound.has_value());
  EXPECT_EQ(*rec.usenum_bound, 8);
  EXPECT_TRUE(rec.pass());
}

TEST(CountingBound, ConstantList) {
  for (unsigned n = 1; n <= 5; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      const auto rec = counting_bound(constant_list(n), k);
      EXPECT_EQ(rec.u_size, restriction_count(n, k));
      EXPECT_EQ(rec.v_size, restriction_count(n, k));
      EXPECT_TRUE(rec.pass());
    }
  }
}

TEST(CountingBound, CorpusPassesAndMatchesAudit) {
  for (const auto& l : audit_corpus(50, 7, 19)) {
    for (unsigned k = 0; k <= l.n(); ++k) {
      const auto rec = counting_bound(l, k);
      ASSERT_TRUE(rec.pass()) << serialize(l) << " k=" << k;
      if (l.n() <= 5) {
        EXPECT_EQ(rec.u_size, oracle_u_size(l, k));
      }
      EXPECT_EQ(rec.usenum_bound.has_value(), k < l.n());
    }
  }
}
