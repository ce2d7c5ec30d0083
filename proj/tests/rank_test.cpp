// Copyright 2026 The szk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#include <gtest/gtest.h>

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "support.hpp"

namespace szk {
namespace {

using testing::F;
using testing::G;

std::uint64_t Dp(const std::string& text) {
  const DpValue v = dp_rank(G(text)).dp;
  EXPECT_TRUE(v.is_finite()) << text;
  return v.finite.value_or(0);
}

std::uint64_t ExhaustiveGapCount(const std::vector<std::uint64_t>& xs) {
  std::uint64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << xs.size()); ++mask) {
    std::vector<std::uint64_t> pick;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (mask >> i & 1) pick.push_back(xs[i]);
    }
    bool ok = true;
    for (std::size_t i = 1; i < pick.size(); ++i) ok = ok && pick[i] >= pick[i - 1] + 2;
    if (ok) best = std::max<std::uint64_t>(best, pick.size());
  }
  return best;
}

TEST(GapCountTest, Examples) {
  EXPECT_EQ(gap_count({}), 0u);
  EXPECT_EQ(gap_count({3}), 1u);
  EXPECT_EQ(gap_count({0, 1, 2}), 2u);
  EXPECT_EQ(gap_count({0, 2}), 2u);
  EXPECT_EQ(gap_count({4, 5}), 1u);
}

TEST(GapCountTest, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 2000; ++i) {
    std::set<std::uint64_t> s;
    const int size = std::uniform_int_distribution<int>(0, 12)(rng);
    while (static_cast<int>(s.size()) < size) {
      s.insert(std::uniform_int_distribution<std::uint64_t>(0, 20)(rng));
    }
    EXPECT_EQ(gap_count(s), ExhaustiveGapCount({s.begin(), s.end()}));
  }
}

TEST(DpRankTest, Examples) {
  EXPECT_EQ(Dp("Q"), 1u);
  EXPECT_EQ(Dp("Z_(2)^w + Z_(3)^w"), 2u);
  EXPECT_EQ(Dp("Z(2^inf)^w + Z(3^inf)^w + Z(5^inf)^w"), 3u);
  EXPECT_EQ(Dp("Z(2)^w + Z(8)^w"), 2u);
  EXPECT_EQ(Dp("Z(2)^w + Z(4)^w"), 1u);
  EXPECT_EQ(Dp("tail(2) + Z(3^inf)^w"), 2u);
  EXPECT_EQ(Dp("tail(2)"), 1u);
  EXPECT_EQ(Dp("tail(2) + Z(2^inf)^w"), 1u);
  const RankReport r = dp_rank(G("forall_p{Z(P^inf)^w}"));
  EXPECT_EQ(r.dp, DpValue::infinite(true));
}

TEST(DpRankTest, CaseTags) {
  EXPECT_EQ(dp_rank(G("Z(2^3)^4")).case_tag, "finite-group");
  EXPECT_EQ(dp_rank(G("Z(2^3)^4")).dp, DpValue::of(0));
  EXPECT_EQ(dp_rank(G("Z_(2)^w")).case_tag, "1");
  EXPECT_EQ(dp_rank(G("Z(2)^w")).case_tag, "2");
  EXPECT_EQ(dp_rank(G("Z(2)^w + Q")).case_tag, "3");
  EXPECT_EQ(dp_rank(G("tail(5)")).case_tag, "4");
}

TEST(DpRankTest, Partition) {
  const RankReport r = dp_rank(G("tail(2) + Z(3)^w + Z(5^2)^4 + forall_p{Z(P^1)}"));
  EXPECT_EQ(r.partition.P1.primes, (std::set<std::uint64_t>{2}));
  EXPECT_EQ(r.partition.P2.primes, (std::set<std::uint64_t>{3}));
  EXPECT_EQ(r.partition.P3.primes, (std::set<std::uint64_t>{5}));
  EXPECT_TRUE(r.partition.P3.infinite);
}

TEST(ClassifyTest, Examples) {
  EXPECT_FALSE(classify(G("tail(2, w)")).strong);
  EXPECT_FALSE(classify(G("forall_p{Z_(P)^w}")).strong);
  const Classification c = classify(G("forall_p{Z(P^inf)^w}"));
  EXPECT_TRUE(c.strong);
  EXPECT_FALSE(c.finite_dp);
  EXPECT_TRUE(classify(G("Q")).dp_minimal);
  EXPECT_FALSE(classify(G("Z(2^2)")).dp_minimal);
  EXPECT_FALSE(classify(G("Z_(2)^w + Z_(3)^w")).dp_minimal);
}

TEST(VcDensityTest, Examples) {
  EXPECT_EQ(vc_density(G("Q"), 1), DpValue::of(1));
  EXPECT_EQ(vc_density(G("Z_(2)^w + Z_(3)^w"), 2), DpValue::of(4));
  EXPECT_FALSE(vc_density(G("forall_p{Z(P^inf)^w}"), 1).is_finite());
  EXPECT_THROW(vc_density(G("Q"), 0), InputError);
}

TEST(SeedWitnessTest, Examples) {
  auto families = [](const std::string& text) {
    std::vector<std::pair<std::string, std::vector<PPFormula>>> out;
    for (const auto& w : seed_witnesses(G(text))) out.emplace_back(w.source, w.formulas);
    return out;
  };
  const auto tf = families("Z_(2)^w + Z_(3)^w");
  ASSERT_FALSE(tf.empty());
  EXPECT_EQ(tf[0].second, (std::vector<PPFormula>{F("div(2,1,0)"), F("div(3,1,0)")}));
  const auto d = families("Z(2^inf)^w + Z(3^inf)^w");
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].second, (std::vector<PPFormula>{F("tor(3)"), F("tor(2)")}));
  const auto t = families("tail(2, w)");
  ASSERT_FALSE(t.empty());
  EXPECT_EQ(t[0].first, "unbounded-length");
  bool found = false;
  for (const auto& [source, fs] : t) {
    if (source != "non-strong-tail") continue;
    found = true;
    EXPECT_EQ(fs, (std::vector<PPFormula>{F("div(2,2,1)"), F("div(2,6,3)"),
                                          F("div(2,14,7)")}));
  }
  EXPECT_TRUE(found);
}

TEST(SeedWitnessTest, GapsCombineWithOtherFamilies) {
  for (const char* text : {"Z(2^3)^w + tail(2, cutoff=3)", "Z(3^4)^w + tail(3, 2, cutoff=4)",
                           "Z(3^4)^w + Z_(3)^w + Z_(5)^w + Z(3^inf)^2",
                           "Z(2)^w + Z(8)^w + Z(2^inf)^w + Z(3^inf)^w"}) {
    const RankReport r = dp_rank(G(text));
    ASSERT_TRUE(r.witness.has_value()) << text;
    EXPECT_EQ(r.witness->size(), *r.dp.finite) << text;
    EXPECT_TRUE(verify_inp(G(text), *r.witness).valid) << text;
  }
}

TEST(SeedWitnessTest, FamiliesVerifyOnCorpus) {
  CorpusGenerator gen(42);
  for (int i = 0; i < 150; ++i) {
    const SzmielewDescription d = gen.any();
    const DpValue dp = dp_case_value(d);
    for (const auto& w : seed_witnesses(d)) {
      EXPECT_EQ(w.formulas.size(), w.certifies) << w.source;
      EXPECT_TRUE(verify_inp(d, w.formulas).valid) << render(d) << " " << w.source;
      if (dp.is_finite()) {
        EXPECT_LE(w.certifies, *dp.finite) << render(d) << " " << w.source;
      }
    }
  }
}

TEST(RankPropertyTest, EpsilonEquationMatchesCases) {
  CorpusGenerator gen(43);
  for (int i = 0; i < 300; ++i) {
    const SzmielewDescription d = gen.finite_dp();
    const DpValue v = dp_case_value(d);
    if (*v.finite == 0) continue;
    EXPECT_EQ(dp_epsilon_value(d), *v.finite) << render(d);
  }
}

TEST(RankPropertyTest, ReportedWitnessesVerify) {
  CorpusGenerator gen(44);
  for (int i = 0; i < 400; ++i) {
    const SzmielewDescription d = gen.finite_dp();
    const RankReport r = dp_rank(d);
    if (*r.dp.finite == 0) continue;
    ASSERT_TRUE(r.witness.has_value()) << render(d);
    EXPECT_EQ(r.witness->size(), *r.dp.finite);
    EXPECT_TRUE(verify_inp(d, *r.witness).valid) << render(d);
  }
}

TEST(RankPropertyTest, Subadditivity) {
  CorpusGenerator gen(45);
  for (int i = 0; i < 200; ++i) {
    const SzmielewDescription a = gen.finite_dp();
    const SzmielewDescription b = gen.finite_dp();
    const DpValue sum = dp_case_value(direct_sum(a, b));
    ASSERT_TRUE(sum.is_finite()) << render(a) << " + " << render(b);
    const std::uint64_t da = *dp_case_value(a).finite, db = *dp_case_value(b).finite;
    EXPECT_LE(std::max(da, db), *sum.finite) << render(a) << " + " << render(b);
    EXPECT_LE(*sum.finite, da + db) << render(a) << " + " << render(b);
  }
}

TEST(RankPropertyTest, StrongBoundsQuotientPrimes) {
  CorpusGenerator gen(46);
  for (int i = 0; i < 300; ++i) {
    const SzmielewDescription d = gen.finite_dp();
    const InvariantReport r = invariants(d);
    ASSERT_FALSE(r.other_primes.quotient_pA_infinite);
    std::uint64_t count = 0;
    for (const auto& [p, inv] : r.primes) count += inv.quotient_pA_infinite ? 1 : 0;
    EXPECT_LE(count, *dp_case_value(d).finite) << render(d);
  }
}

TEST(RankPropertyTest, AddingSmallUnboundedSummand) {
  // B has unbounded exponent and every definable subgroup of unbounded
  // exponent has finite index in it.
  const std::vector<std::string> bs{"Q", "Z(7^inf)", "Z_(7)", "Z_(2)^2"};
  const std::vector<std::pair<std::string, bool>> as{
      {"Z(2)^w + Z(8)^w", true},     {"Z(3)^w", true},
      {"Z(2)^w + Z(3^2)^w", true},   {"Z(5^3)^w + Z(5)^2", true},
      {"Z_(3)^w", false},            {"tail(3)", false},
      {"Z(2^inf)^w + Z(3^inf)^w", false}, {"Z_(3)^w + Z_(5)^w + Z(2)^w", false}};
  for (const auto& [a, bounded] : as) {
    for (const auto& b : bs) {
      EXPECT_EQ(Dp(a + " + " + b), Dp(a) + (bounded ? 1 : 0)) << a << " + " << b;
    }
  }
}

}  // namespace
}  // namespace szk
