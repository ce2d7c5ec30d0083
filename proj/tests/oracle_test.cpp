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

#include <cstdlib>
#include <string>
#include <vector>

#include "support.hpp"

namespace szk {
namespace {

using testing::F;
using testing::G;

std::uint64_t Depth(const std::string& text, std::uint64_t B, std::uint64_t max_k = 6) {
  return breadth_search(G(text), B, max_k).depth;
}

std::vector<PPFormula> Fs(std::initializer_list<const char*> texts) {
  std::vector<PPFormula> out;
  for (const char* t : texts) out.push_back(F(t));
  return out;
}

TEST(PoolTest, RawPoolOrder) {
  const auto pool = raw_pool(G("Z(2)"), 2);
  EXPECT_EQ(pool, Fs({"tor(1)", "tor(2)", "tor(4)", "div(2,1,0)", "div(2,2,0)",
                      "div(2,2,1)"}));
  const auto mixed = raw_pool(G("Z(2) + Z(3)"), 1);
  EXPECT_EQ(mixed, Fs({"tor(1)", "tor(2)", "tor(3)", "tor(6)", "div(2,1,0)",
                       "div(3,1,0)"}));
}

TEST(PoolTest, PrimeTailAddsFreshPrime) {
  EXPECT_EQ(pool_primes(normalize(G("Z(2) + forall_p{Z(P^inf)}"))),
            (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(pool_primes(G("Q")), (std::vector<std::uint64_t>{2}));
}

TEST(PoolTest, CandidatePoolDropsDuplicates) {
  // On Z(2)^w every tor(2^e) with e >= 1 defines the whole group.
  const auto pool = candidate_pool(G("Z(2)^w"), 3);
  EXPECT_LT(pool.size(), raw_pool(G("Z(2)^w"), 3).size());
  EXPECT_EQ(pool.front(), F("tor(1)"));
}

TEST(PoolTest, CapIsEnforced) {
  EXPECT_THROW(raw_pool(G("Z(2)+Z(3)+Z(5)"), 4, 20), CapExceeded);
  EXPECT_THROW(raw_pool(G("Z(2)+Z(3)+Z(5)+Z(7)"), 40), CapExceeded);
  setenv("SZK_MAX_POOL", "10", 1);
  EXPECT_EQ(max_pool_from_env(), 10u);
  EXPECT_THROW(breadth_search(G("Z(2)+Z(3)"), 3, 2), CapExceeded);
  unsetenv("SZK_MAX_POOL");
  EXPECT_EQ(max_pool_from_env(), kDefaultMaxPool);
}

TEST(VerifyInpTest, Examples) {
  const auto g = G("Z(2^inf)^w + Z(3^inf)^w");
  EXPECT_TRUE(verify_inp(g, Fs({"tor(2)", "tor(3)"})).valid);
  EXPECT_FALSE(verify_inp(g, Fs({"tor(2)", "tor(4)"})).valid);
  EXPECT_TRUE(verify_inp(G("Q"), Fs({"tor(1)"})).valid);
  EXPECT_FALSE(verify_inp(G("Z(2)^3"), Fs({"tor(1)"})).valid);
  EXPECT_THROW(verify_inp(g, {}), InputError);
}

TEST(VerifyInpTest, TranscriptMatchesIndices) {
  const InpVerdict v = verify_inp(G("Z(2)^w + Z(8)^w"), Fs({"tor(2)", "div(2,1,0)"}));
  ASSERT_EQ(v.transcript.size(), 2u);
  EXPECT_TRUE(v.valid);
  EXPECT_TRUE(v.transcript[0].is_infinite());
}

TEST(BreadthTest, Examples) {
  EXPECT_EQ(Depth("Q", 3), 1u);
  EXPECT_EQ(Depth("Z_(2)^w + Z_(3)^w", 3), 2u);
  EXPECT_EQ(Depth("Z(2^inf)^w + Z(3^inf)^w + Z(5^inf)^w", 3), 3u);
  EXPECT_EQ(Depth("Z(2)^w + Z(8)^w", 5), 2u);
  EXPECT_EQ(Depth("Z(2)^w + Z(4)^w", 4), 1u);
  EXPECT_EQ(Depth("tail(2)", 4), 1u);
  EXPECT_EQ(Depth("Z(2^3)^4", 5), 0u);
}

TEST(BreadthTest, WitnessIsValid) {
  const BreadthResult r = breadth_search(G("Z(2)^w + Z(8)^w"), 5, 4);
  ASSERT_EQ(r.witness.size(), r.depth);
  EXPECT_TRUE(r.exhausted);
  EXPECT_TRUE(verify_inp(G("Z(2)^w + Z(8)^w"), r.witness).valid);
}

TEST(BreadthTest, NonStrongTailReachesThree) {
  const BreadthResult r = breadth_search(G("tail(2, w)"), 14, 3);
  EXPECT_EQ(r.depth, 3u);
  EXPECT_TRUE(verify_inp(G("tail(2, w)"), r.witness).valid);
}

TEST(BreadthTest, InputErrors) {
  EXPECT_THROW(breadth_search(G("Q"), 0, 2), InputError);
  EXPECT_THROW(breadth_search(G("Q"), 2, 0), InputError);
}

TEST(BreadthPropertyTest, SoundAndMonotone) {
  CorpusOptions opts;
  opts.primes = {2, 3};
  opts.max_exponent = 3;
  opts.max_terms = 3;
  CorpusGenerator gen(51, opts);
  for (int i = 0; i < 60; ++i) {
    const SzmielewDescription d = gen.finite_dp();
    const std::uint64_t dp = *dp_case_value(d).finite;
    const std::uint64_t B0 = default_pool_bound(d);
    std::uint64_t last = 0;
    for (std::uint64_t B = 1; B <= B0; ++B) {
      const BreadthResult r = breadth_search(d, B, dp + 1);
      EXPECT_GE(r.depth, last) << render(d) << " B=" << B;
      EXPECT_LE(r.depth, dp) << render(d) << " B=" << B;
      if (r.depth > 0) {
        EXPECT_TRUE(verify_inp(d, r.witness).valid) << render(d);
      }
      last = r.depth;
    }
    EXPECT_EQ(last, dp) << render(d);
    for (std::uint64_t k = 1; k <= dp; ++k) {
      EXPECT_EQ(breadth_search(d, B0, k).depth, k) << render(d) << " k=" << k;
    }
  }
}

TEST(BreadthPropertyTest, AgreesWithClosedFormOnLongSums) {
  CorpusOptions opts;
  opts.primes = {2, 3, 5};
  opts.max_terms = 8;
  CorpusGenerator gen(53, opts);
  for (int i = 0; i < 200; ++i) {
    const SzmielewDescription d = gen.finite_dp();
    const std::uint64_t dp = *dp_case_value(d).finite;
    const BreadthResult r = breadth_search(d, default_pool_bound(d), dp + 1);
    EXPECT_EQ(r.depth, dp) << render(d);
    EXPECT_TRUE(r.exhausted) << render(d);
  }
}

TEST(BreadthPropertyTest, HighRankFixtures) {
  for (const char* text :
       {"tail(2) + Z(3^inf)^w + Z_(5)^w + Z(7)^w",
        "Z(2)^w + Z(8)^w + Z(32)^w + Z(3^inf)^w + Z_(5)^w",
        "Z_(2)^w + Z(2^inf)^w + Z(3)^w + Z(27)^w + Q"}) {
    const SzmielewDescription d = G(text);
    const std::uint64_t dp = *dp_case_value(d).finite;
    EXPECT_GE(dp, 3u) << text;
    EXPECT_EQ(breadth_search(d, default_pool_bound(d), dp + 1).depth, dp) << text;
  }
}

TEST(BreadthPropertyTest, ReducedPoolMatchesFullSearch) {
  const std::vector<std::string> groups{"Z(2)^w + Z(8)^w", "Z(2)^w + Z(4)^w",
                                        "Z(2^inf)^w + Z(3)^w", "tail(2) + Z(3)^w",
                                        "Z_(2)^w + Z(2)^w", "Z(2)^w + Q"};
  for (const auto& text : groups) {
    const SzmielewDescription d = G(text);
    const std::vector<PPFormula> pool = candidate_pool(d, 3);
    std::uint64_t full = 0;
    const std::size_t n = pool.size();
    for (std::size_t a = 0; a < n; ++a) {
      if (verify_inp(d, {pool[a]}).valid) full = std::max<std::uint64_t>(full, 1);
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!verify_inp(d, {pool[a], pool[b]}).valid) continue;
        full = std::max<std::uint64_t>(full, 2);
        for (std::size_t c = b + 1; c < n; ++c) {
          if (verify_inp(d, {pool[a], pool[b], pool[c]}).valid) full = 3;
        }
      }
    }
    EXPECT_EQ(breadth_search(d, 3, 3).depth, full) << text;
  }
}

TEST(BreadthPropertyTest, ParallelMatchesSerial) {
  CorpusGenerator gen(52);
  for (int i = 0; i < 20; ++i) {
    const SzmielewDescription d = gen.finite_dp();
    const std::uint64_t B = default_pool_bound(d);
    const BreadthResult serial = breadth_search(d, B, 6);
    const BreadthResult parallel = breadth_search(d, B, 6, {4, 50'000'000});
    EXPECT_EQ(serial.depth, parallel.depth) << render(d);
    EXPECT_EQ(serial.witness, parallel.witness) << render(d);
  }
}

TEST(BreadthPropertyTest, NodeBudgetMarksIncomplete) {
  const BreadthResult r =
      breadth_search(G("Z(2^inf)^w + Z(3^inf)^w + Z(5^inf)^w"), 3, 4, {1, 3});
  EXPECT_FALSE(r.exhausted);
}

}  // namespace
}  // namespace szk
