// Copyright 2026 The whichway Authors
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

#include "whichway/complementarity.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"
#include "whichway/error.hpp"

using namespace whichway;
using whichway::testing::kBalanced;

namespace {

DetectorDensity rho_of(double lp, double lm, double phi, double d) {
  return reduce_to_detector(make_which_way_state(lp, lm, phi, d, 0.0, 0.0));
}

}  // namespace

TEST(Complementarity, Predictability) {
  EXPECT_DOUBLE_EQ(predictability(rho_of(1.0, 0.0, 0.0, 4.0)), 1.0);
  EXPECT_NEAR(predictability(rho_of(kBalanced, kBalanced, 0.0, 4.0)), 0.0, 1e-15);
  EXPECT_NEAR(predictability(rho_of(std::sqrt(0.7), std::sqrt(0.3), 0.0, 4.0)), 0.4, 1e-15);
}

TEST(Complementarity, Visibility) {
  EXPECT_EQ(visibility(rho_of(1.0, 0.0, 0.0, 4.0)), 0.0);
  EXPECT_NEAR(visibility(rho_of(kBalanced, kBalanced, 0.0, 4.0)), 0.018315638888734179, 1e-16);
  EXPECT_NEAR(visibility(rho_of(kBalanced, kBalanced, 0.0, 0.0)), 1.0, 1e-15);
}

TEST(Complementarity, LinearEntropy) {
  EXPECT_EQ(linear_entropy(1.0, 0.0, 4.0), 0.0);
  EXPECT_NEAR(linear_entropy(kBalanced, kBalanced, 4.0), 0.49983226868604874408, 1e-15);
  EXPECT_EQ(linear_entropy(kBalanced, kBalanced, 0.0), 0.0);
  EXPECT_THROW(linear_entropy(0.9, 0.9, 1.0), InvalidArgument);
}

TEST(Complementarity, Distinguishability) {
  EXPECT_DOUBLE_EQ(distinguishability(1.0, 0.0), 1.0);
  const double S = linear_entropy(kBalanced, kBalanced, 4.0);
  EXPECT_NEAR(distinguishability(0.0, S), 0.99983225461679195027, 1e-15);
  EXPECT_EQ(distinguishability(0.0, 0.0), 0.0);
  EXPECT_THROW(distinguishability(0.9, 0.3), InvalidArgument);
}

TEST(Complementarity, FullSetExamples) {
  const auto a = full_set(std::sqrt(0.7), std::sqrt(0.3), 0.0, 4.0);
  EXPECT_NEAR(a.P, 0.4, 1e-15);
  EXPECT_NEAR(a.V, 0.016786560321820249087, 1e-16);
  EXPECT_NEAR(a.S, 0.41985910569628094503, 1e-15);
  EXPECT_LT(a.residual_identity, 1e-12);

  const auto b = full_set(kBalanced, kBalanced, 0.0, 4.0);
  EXPECT_NEAR(b.P, 0.0, 1e-15);
  EXPECT_NEAR(b.V, std::exp(-4.0), 1e-16);
  EXPECT_NEAR(2.0 * b.S, 1.0 - std::exp(-8.0), 1e-15);
  EXPECT_LT(b.residual_identity, 1e-15);

  const auto c = full_set(1.0, 0.0, 0.0, 4.0);
  EXPECT_EQ(c.P, 1.0);
  EXPECT_EQ(c.V, 0.0);
  EXPECT_EQ(c.S, 0.0);
  EXPECT_EQ(c.D, 1.0);
  EXPECT_EQ(c.residual_identity, 0.0);
}

TEST(ComplementarityProperty, IdentitiesHoldForRandomStates) {
  whichway::testing::ParamSource src(31);
  for (int i = 0; i < 1000; ++i) {
    const auto w = src.next();
    const auto set = full_set(w.lambda_plus, w.lambda_minus, w.phi, w.d);
    ASSERT_LT(set.residual_identity, 1e-12);
    ASSERT_LT(set.residual_distinguishability, 1e-12);
    ASSERT_GE(set.P, 0.0);
    ASSERT_LE(set.P, 1.0);
    ASSERT_GE(set.V, 0.0);
    ASSERT_LE(set.V, 1.0);
    ASSERT_GE(set.S, 0.0);
    ASSERT_LE(set.S, 0.5);
    ASSERT_LE(set.D, 1.0);
    // Purity route agrees with the closed form.
    ASSERT_NEAR(linear_entropy(rho_of(w.lambda_plus, w.lambda_minus, w.phi, w.d)), set.S, 1e-12);
  }
}

TEST(ComplementarityProperty, BalancedMonotonicInSeparation) {
  double prev_v = 2.0;
  double prev_s = -1.0;
  for (int i = 0; i <= 400; ++i) {
    const double d = 8.0 * i / 400.0;
    const auto set = full_set(kBalanced, kBalanced, 0.0, d);
    ASSERT_LT(set.V, prev_v) << "d=" << d;
    ASSERT_GT(set.S, prev_s) << "d=" << d;
    prev_v = set.V;
    prev_s = set.S;
  }
}

TEST(ComplementarityProperty, Extremes) {
  // S = 0 implies D = P.
  for (double lp : {1.0, 0.0}) {
    const auto set = full_set(lp, std::sqrt(1.0 - lp * lp), 0.0, 5.0);
    EXPECT_EQ(set.S, 0.0);
    EXPECT_DOUBLE_EQ(set.D, set.P);
  }
  const auto no_encoding = full_set(std::sqrt(0.3), std::sqrt(0.7), 0.0, 0.0);
  EXPECT_EQ(no_encoding.S, 0.0);
  EXPECT_NEAR(no_encoding.D, no_encoding.P, 1e-15);
  // P = 0 and d -> infinity saturates S at 1/2.
  EXPECT_NEAR(full_set(kBalanced, kBalanced, 0.0, 40.0).S, 0.5, 1e-15);
}
