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

#include <vector>

#include "support.hpp"

namespace szk {
namespace {

using testing::G;

TEST(MultTest, ArithmeticAndOrder) {
  EXPECT_EQ(Mult(2) + Mult(3), Mult(5));
  EXPECT_EQ(Mult(2) + kOmega, kOmega);
  EXPECT_EQ(kOmega + kOmega, kOmega);
  EXPECT_EQ(Mult(0) * kOmega, Mult(0));
  EXPECT_EQ(Mult(3) * kOmega, kOmega);
  EXPECT_LT(Mult(1'000'000), kOmega);
  EXPECT_LT(Mult(0), Mult(1));
  EXPECT_EQ(kOmega.to_string(), "w");
  EXPECT_THROW(Mult(UINT64_MAX) + Mult(1), InputError);
}

TEST(MultTest, OrderIsTotal) {
  const std::vector<Mult> values{0, 1, 2, 7, kOmega};
  for (const Mult& a : values) {
    for (const Mult& b : values) {
      const int lt = a < b, eq = a == b, gt = a > b;
      EXPECT_EQ(lt + eq + gt, 1);
      EXPECT_EQ(a + b, b + a);
    }
  }
}

TEST(FactoredTest, ExactValues) {
  EXPECT_EQ(Factored::of(12).exponent_of(2), 2u);
  EXPECT_EQ(Factored::of(12).to_string(), "12");
  EXPECT_EQ((Factored::of(6) * Factored::of(10)).to_u64(), 60u);
  EXPECT_EQ(Factored::prime_power(2, 70).to_string(), "2^70");
  EXPECT_EQ((Factored::prime_power(2, 70) * Factored::of(3)).to_string(), "2^70*3");
  EXPECT_EQ(Factored::lcm(Factored::of(4), Factored::of(6)), Factored::of(12));
  EXPECT_THROW(Factored::of(0), InputError);
}

TEST(IndexClassTest, MonoidLaws) {
  std::vector<IndexClass> values{IndexClass(), IndexClass::finite(2),
                                 IndexClass::finite(12), IndexClass::prime_power(5, 40),
                                 IndexClass::infinite()};
  for (const auto& a : values) {
    EXPECT_EQ(a * IndexClass(), a);
    EXPECT_TRUE((a * IndexClass::infinite()).is_infinite());
    for (const auto& b : values) {
      EXPECT_EQ(a * b, b * a);
      for (const auto& c : values) EXPECT_EQ((a * b) * c, a * (b * c));
    }
  }
  EXPECT_EQ(IndexClass::infinite().to_string(), "inf");
  EXPECT_EQ((IndexClass::finite(4) * IndexClass::finite(2)).to_string(), "8");
}

TEST(PrimesTest, Basics) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(valuation(48, 2), 4u);
  EXPECT_EQ(valuation(48, 5), 0u);
  EXPECT_EQ(first_prime_not_in({2, 3, 7}), 5u);
  EXPECT_THROW(checked_pow(2, 64), InputError);
}

TEST(ValidateTest, WellFormed) {
  SzmielewDescription d;
  d.cyclic[{2, 3}] = kOmega;
  EXPECT_TRUE(validate(d).empty());
}

TEST(ValidateTest, ZeroExponent) {
  SzmielewDescription d;
  d.cyclic[{2, 0}] = 1;
  ASSERT_EQ(validate(d).size(), 1u);
  EXPECT_EQ(validate(d)[0].message, "exponent must be >= 1");
}

TEST(ValidateTest, CutoffBelowListedExponent) {
  SzmielewDescription d;
  d.cyclic[{2, 3}] = 1;
  d.cyclic_tail[2] = {1, 1};
  ASSERT_EQ(validate(d).size(), 1u);
  EXPECT_EQ(validate(d)[0].message, "cutoff below listed exponent");
}

TEST(ValidateTest, ReportsEveryViolation) {
  SzmielewDescription d;
  d.tf[4] = 1;
  d.cyclic_tail[3] = {0, 0};
  d.cyclic[{6, 0}] = 1;
  EXPECT_EQ(validate(d).size(), 4u);
}

TEST(DescriptionTest, DirectSumAddsMultiplicities) {
  const auto d = direct_sum(G("Z(2^3) + Z_(5)"), G("Z(2^3)^2 + Q"));
  EXPECT_EQ(d.cyclic.at({2, 3}), Mult(3));
  EXPECT_EQ(d.tf.at(5), Mult(1));
  EXPECT_EQ(d.q_mult, Mult(1));
}

TEST(DescriptionTest, DirectSumMergesTails) {
  const auto d = direct_sum(G("tail(2, cutoff=2)"), G("Z(2^4)"));
  EXPECT_EQ(d.component(2).alpha(4), Mult(2));
  EXPECT_EQ(d.component(2).alpha(3), Mult(1));
  EXPECT_EQ(d.component(2).alpha(9), Mult(1));
  EXPECT_EQ(d.component(2).alpha(1), Mult(0));
}

TEST(DescriptionTest, DirectSumWithPrimeTailUsesShapeAtListedPrimes) {
  const auto d = direct_sum(G("Z(2^1)"), G("forall_p{Z_(P)}"));
  EXPECT_EQ(d.component(2).tf, Mult(1));
  EXPECT_EQ(d.component(2).alpha(1), Mult(1));
  EXPECT_EQ(d.component(3).tf, Mult(1));
}

TEST(DescriptionTest, ZeroMarkerExcludesPrimeFromShape) {
  const auto d = G("Z_(3)^0 + forall_p{Z(P^inf)}");
  EXPECT_TRUE(d.component(3).is_zero());
  EXPECT_EQ(d.component(5).div, Mult(1));
}

}  // namespace
}  // namespace szk
