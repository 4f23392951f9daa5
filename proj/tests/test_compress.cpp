#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dlc/compress.hpp"
#include "dlc/generators.hpp"
#include "dlc/io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dlc;
using dlc::testing::constant_list;
using dlc::testing::example_list;

namespace {

std::vector<DecisionList> compress_corpus(std::size_t count, unsigned max_n, std::uint64_t seed) {
  CorpusSpec spec;
  spec.max_n = max_n;
  spec.max_w = 3;
  spec.max_m = 12;
  spec.count = count;
  spec.seed = seed;
  return random_corpus(spec);
}

bool pointwise_le(const DecisionList& a, const DecisionList& b) {
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << a.n()); ++x) {
    if (a.eval(x) == "1" && b.eval(x) != "1") return false;
  }
  return true;
}

}  // namespace

TEST(Distance, Examples) {
  const auto ex = example_list();
  EXPECT_EQ(distance(ex, ex).value, 0.0);
  const auto sub = ex.sublist(std::vector<RuleIndex>{1, 5});
  EXPECT_EQ(*distance(ex, sub).rational, Rational(1, 2));
  EXPECT_THROW(distance(ex, constant_list(3)), std::invalid_argument);
}

TEST(Distance, MatchesOracle) {
  const auto lists = compress_corpus(30, 8, 3);
  for (std::size_t i = 0; i + 1 < lists.size(); ++i) {
    const auto& a = lists[i];
    for (std::size_t j = i + 1; j < lists.size(); ++j) {
      if (lists[j].n() != a.n()) continue;
      EXPECT_EQ(*distance(a, lists[j]).rational, dyadic(oracle::mismatches(a, lists[j]), a.n()));
    }
  }
}

TEST(Distance, MonteCarloWithinInterval) {
  const auto a = gen_threshold_dnf(8, 3);
  const auto b = a.sublist(std::vector<RuleIndex>{1, 2, 3, static_cast<RuleIndex>(a.size())});
  const double exact = distance(a, b).value;
  const auto est = distance(a, b, MonteCarloMode{100000, RandomSource(4), 1});
  EXPECT_FALSE(est.exact);
  EXPECT_LE(std::abs(est.value - exact), 4 * est.half_width);
}

TEST(RankByHit, Examples) {
  const auto ex = example_list();
  EXPECT_EQ(rank_by_hit(ex, hit_distribution(ex)), (std::vector<RuleIndex>{1, 3, 2, 4, 5}));
  EXPECT_EQ(rank_by_hit(constant_list(), hit_distribution(constant_list())), std::vector<RuleIndex>{1});
  EXPECT_EQ(rank_by_hit(gen_tribes(2, 2), hit_distribution(gen_tribes(2, 2))), (std::vector<RuleIndex>{3, 1, 2}));
}

TEST(RankByHit, TiesKeepOriginalOrder) {
  const auto full = gen_from_truth_table(std::string_view("abcd"));
  const auto p = hit_distribution(full);
  auto order = rank_by_hit(full, p);
  // The default rule has mass 0 and sinks; the four full-width terms tie.
  EXPECT_EQ(order, (std::vector<RuleIndex>{1, 2, 3, 4, 5}));
}

TEST(RankByHit, LengthMismatch) {
  EXPECT_THROW(rank_by_hit(example_list(), hit_distribution(constant_list())), std::invalid_argument);
}

TEST(TakeTop, Examples) {
  const auto ex = example_list();
  const auto p = hit_distribution(ex);
  const auto two = take_top(ex, 2, p);
  EXPECT_EQ(two.kept, (std::vector<RuleIndex>{1, 3, 5}));
  EXPECT_EQ(*two.dropped_exact, 0);
  EXPECT_EQ(two.distance.value, 0.0);

  const auto one = take_top(ex, 1, p);
  EXPECT_EQ(one.kept, (std::vector<RuleIndex>{1, 5}));
  EXPECT_EQ(*one.dropped_exact, Rational(1, 2));
  EXPECT_EQ(*one.distance.rational, Rational(1, 2));

  const auto all = take_top(ex, ex.size(), p);
  EXPECT_EQ(all.kept.size(), ex.size());
  EXPECT_EQ(all.distance.value, 0.0);
  EXPECT_EQ(all.sublist, ex);
}

TEST(TakeTop, Errors) {
  const auto ex = example_list();
  const auto p = hit_distribution(ex);
  EXPECT_THROW(take_top(ex, 0, p), std::out_of_range);
  EXPECT_THROW(take_top(ex, 6, p), std::out_of_range);
}

TEST(TakeTop, DistanceWithinDroppedMassForEveryT) {
  for (const auto& l : compress_corpus(150, 10, 5)) {
    const auto p = hit_distribution(l);
    for (std::size_t t = 1; t <= l.size(); ++t) {
      const auto r = take_top(l, t, p);
      ASSERT_LE(*r.distance.rational, *r.dropped_exact) << serialize(l) << " t=" << t;
      ASSERT_EQ(r.kept.back(), l.size());
      ASSERT_TRUE(std::is_sorted(r.kept.begin(), r.kept.end()));
      ASSERT_EQ(r.sublist.size(), r.kept.size());
      for (std::size_t k = 0; k < r.kept.size(); ++k) ASSERT_EQ(r.sublist.rules()[k], l.rule(r.kept[k]));
      ASSERT_EQ(*r.distance.rational, dyadic(oracle::mismatches(l, r.sublist), l.n()));
    }
  }
}

TEST(TakeTop, JuntaSizeCountsKeptVariables) {
  const auto tribes = gen_tribes(3, 2);
  const auto r = take_top(tribes, 1, hit_distribution(tribes));
  EXPECT_EQ(r.junta_size, std::popcount(r.sublist.support()));
}

TEST(MinSize, Examples) {
  const auto ex = min_size_for_error(example_list(), 0.0);
  EXPECT_EQ(ex.t, 2u);
  EXPECT_EQ(ex.kept, (std::vector<RuleIndex>{1, 3, 5}));
  EXPECT_EQ(ex.distance.value, 0.0);

  const auto tribes = min_size_for_error(gen_tribes(2, 2), 0.2);
  EXPECT_EQ(tribes.t, 2u);
  EXPECT_EQ(tribes.kept, (std::vector<RuleIndex>{1, 3}));
  EXPECT_EQ(*tribes.dropped_exact, Rational(3, 16));

  EXPECT_EQ(min_size_for_error(gen_tribes(2, 2), 1.0).t, 1u);
  EXPECT_THROW(min_size_for_error(example_list(), 1.5), std::invalid_argument);
}

TEST(MinSize, SmallestFeasibleT) {
  for (const auto& l : compress_corpus(80, 9, 7)) {
    const auto p = hit_distribution(l);
    for (double eps : {0.0, 0.05, 0.2, 0.5}) {
      const auto r = min_size_for_error(l, eps);
      ASSERT_LE(*r.dropped_exact, Rational(eps));
      if (r.t > 1) {
        EXPECT_GT(*take_top(l, r.t - 1, p).dropped_exact, Rational(eps));
      }
    }
  }
}

TEST(MinSize, MonteCarloMode) {
  const auto l = gen_threshold_dnf(6, 2);
  const auto r = min_size_for_error(l, 0.1, MonteCarloMode{50000, RandomSource(8), 1});
  EXPECT_FALSE(r.dropped_exact.has_value());
  EXPECT_LE(r.dropped_mass, 0.1);
  EXPECT_FALSE(r.distance.exact);
}

TEST(SizeBound, Examples) {
  const auto a = theorem_size_bound(2, 0.25);
  EXPECT_DOUBLE_EQ(a.ell, 1.0);
  EXPECT_DOUBLE_EQ(a.beta, 0.5);
  EXPECT_EQ(a.t, 16777216u);
  const auto b = theorem_size_bound(1, std::ldexp(1.0, -8));
  EXPECT_DOUBLE_EQ(b.ell, 8.0);
  EXPECT_DOUBLE_EQ(b.beta, 0.125);
  EXPECT_EQ(b.t, 2097152u);
  EXPECT_FALSE(b.saturated);
}

TEST(SizeBound, MonotoneInEpsilon) {
  for (unsigned w = 1; w <= 4; ++w) {
    std::uint64_t previous = 0;
    for (int step = 99; step >= 1; --step) {
      const auto t = theorem_size_bound(w, step / 100.0).t;
      EXPECT_GE(t, previous) << "w=" << w << " eps=" << step / 100.0;
      previous = t;
    }
  }
}

TEST(SizeBound, SaturatesAndValidates) {
  const auto big = theorem_size_bound(10, 0.01);
  EXPECT_TRUE(big.saturated);
  EXPECT_EQ(big.t, std::numeric_limits<std::uint64_t>::max());
  EXPECT_THROW(theorem_size_bound(0, 0.5), std::invalid_argument);
  EXPECT_THROW(theorem_size_bound(2, 0.0), std::invalid_argument);
  EXPECT_THROW(theorem_size_bound(2, 1.0), std::invalid_argument);
}

TEST(SizeBound, EndToEndWithinEpsilon) {
  for (const auto& l : compress_corpus(60, 10, 9)) {
    for (double eps : {0.01, 0.1, 0.3}) {
      const auto r = compress_to_theorem_bound(l, eps);
      EXPECT_LE(r.distance.value, eps);
    }
  }
}

TEST(Sparsify, Examples) {
  const auto tribes = sparsify_dnf(gen_tribes(2, 2), 0.0);
  EXPECT_EQ(tribes.kept, (std::vector<RuleIndex>{1, 2, 3}));
  const auto thr = sparsify_dnf(gen_threshold_dnf(4, 2), 0.0);
  EXPECT_EQ(thr.kept.size(), 7u);
  const auto single = sparsify_dnf(dlc::testing::single_literal_list(), 1.0);
  EXPECT_EQ(single.kept.size(), 2u);
  EXPECT_THROW(sparsify_dnf(example_list(), 0.1), std::invalid_argument);
}

TEST(Sparsify, PointwiseBelowInput) {
  std::vector<DecisionList> dnfs;
  for (unsigned n = 3; n <= 12; ++n) dnfs.push_back(gen_threshold_dnf(n, std::min(3u, n - 1)));
  for (unsigned t = 1; t <= 4; ++t) dnfs.push_back(gen_tribes(t, 3));
  for (const auto& f : dnfs) {
    for (double eps : {0.0, 0.1, 0.4}) {
      const auto r = sparsify_dnf(f, eps);
      EXPECT_TRUE(is_dnf_shaped(r.sublist));
      EXPECT_TRUE(pointwise_le(r.sublist, f));
      EXPECT_LE(r.distance.value, eps + 1e-15);
    }
  }
}
