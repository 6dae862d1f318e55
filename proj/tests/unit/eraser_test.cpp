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

#include "whichway/eraser.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_util.hpp"
#include "whichway/error.hpp"

using namespace whichway;
using whichway::testing::kBalanced;

namespace {

constexpr double kSech2 = 0.26580222883407969212;
constexpr double kTanh2 = 0.96402758007581688395;
constexpr double kSech4 = 0.036618993473686532773;
constexpr double kSech6 = 0.0049574738935603787303;

}  // namespace

TEST(Eraser, DeltaExamples) {
  EXPECT_EQ(delta(4.0, 0.0, 1.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(delta(4.0, 0.0, 1.0, 1.0), -2.0);
  EXPECT_EQ(delta(3.0, 0.7, 2.0, 1.4), 0.0);
}

TEST(Eraser, DeltaMatchesDimensionalForm) {
  whichway::testing::ParamSource src(41);
  for (int i = 0; i < 200; ++i) {
    const double b = src.uniform(0.1, 10.0);
    const double tau = src.uniform(0.1, 10.0);
    const double d = src.uniform(0.0, 8.0) * b;
    const double k = src.uniform(-2.0, 2.0) / b;
    const double t = src.uniform(0.0, 3.0) * tau;
    const double x = src.uniform(-8.0, 8.0) * b;
    // Dimensional form: d tau (b^2 k t - x tau) / (b^2 (t^2 + tau^2)).
    const double dimensional = d * tau * (b * b * k * t - x * tau) / (b * b * (t * t + tau * tau));
    ASSERT_NEAR(delta_dimensional(d, k, t, x, b, tau), dimensional, 1e-12 * std::max(1.0, std::abs(dimensional)));
    ASSERT_NEAR(delta(d / b, k * b, t / tau, x / b), dimensional, 1e-12 * std::max(1.0, std::abs(dimensional)));
  }
}

TEST(Eraser, ConditionedPairExamples) {
  const auto center = conditioned_pair(kBalanced, kBalanced, 4.0, 0.0, 1.0, 0.0);
  EXPECT_NEAR(center.visibility, 1.0, 1e-15);
  EXPECT_NEAR(center.knowledge, 0.0, 1e-15);

  const auto off = conditioned_pair(kBalanced, kBalanced, 4.0, 0.0, 1.0, 1.0);
  EXPECT_NEAR(off.visibility, kSech2, 1e-15);
  EXPECT_NEAR(off.knowledge, kTanh2, 1e-15);

  for (double x : {-4.0, 0.0, 2.5}) {
    const auto pure = conditioned_pair(1.0, 0.0, 4.0, 0.3, 1.0, x);
    EXPECT_EQ(pure.visibility, 0.0);
    EXPECT_EQ(pure.knowledge, 1.0);
  }
}

TEST(Eraser, BalancedClosedForm) {
  EXPECT_EQ(conditioned_visibility_balanced(4.0, 0.5, 2.0, 1.0), 1.0);
  EXPECT_NEAR(conditioned_visibility_balanced(4.0, 0.0, 1.0, 1.0), kSech2, 1e-16);
  EXPECT_NEAR(conditioned_visibility_balanced(4.0, 0.0, 1.0, 3.0), kSech6, 1e-18);
  EXPECT_NEAR(conditioned_visibility_balanced(4.0, 0.0, 0.0, 1.0), kSech4, 1e-17);
}

TEST(Eraser, LocusExamples) {
  EXPECT_EQ(eraser_locus(4.0, 0.0, 3.0), 0.0);
  EXPECT_EQ(eraser_locus(4.0, 1.0, 1.0), 1.0);
  EXPECT_EQ(eraser_locus(4.0, 1.0, 0.0), 0.0);
}

TEST(Eraser, ConditionedResultCarriesPosterior) {
  const auto r = conditioned(kBalanced, kBalanced, 0.9, 4.0, 0.0, 1.0, 1.0);
  EXPECT_NEAR(r.delta, -2.0, 1e-15);
  EXPECT_NEAR(2.0 * std::abs(r.posterior(0, 1)), r.V_x, 1e-15);
  EXPECT_NEAR(std::abs((r.posterior(0, 0) - r.posterior(1, 1)).real()), r.K_x, 1e-15);
  EXPECT_GT(r.density, 0.0);
}

TEST(Eraser, AxisGridEndpointsAreExact) {
  const AxisGrid axis{-6.0, 6.0, 601};
  EXPECT_EQ(axis.value(0), -6.0);
  EXPECT_EQ(axis.value(300), 0.0);
  EXPECT_EQ(axis.value(600), 6.0);
  EXPECT_THROW((AxisGrid{0.0, 1.0, 0}.validate("x")), InvalidArgument);
  EXPECT_THROW((AxisGrid{1.0, 0.0, 10}.validate("x")), InvalidArgument);
}

TEST(Eraser, FigureOneShape) {
  const auto rows = figure_scan(Figure::position, FigureParams{});
  ASSERT_EQ(rows.size(), 601u);
  const auto best = std::max_element(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.V_x < b.V_x; });
  EXPECT_EQ(best->x, 0.0);
  EXPECT_NEAR(best->V_x, 1.0, 1e-15);
  for (const auto& r : rows) {
    ASSERT_NEAR(r.V_x * r.V_x + r.K_x * r.K_x, 1.0, 1e-12);
    if (std::abs(r.x) >= 3.0) ASSERT_LT(r.V_x, 0.01) << r.x;
  }
}

TEST(Eraser, FigureTwoShape) {
  const auto rows = figure_scan(Figure::time, FigureParams{});
  ASSERT_EQ(rows.size(), 601u);
  EXPECT_NEAR(rows.front().V_x, kSech4, 1e-15);
  EXPECT_GT(rows.back().V_x, 0.98);
  for (std::size_t i = 1; i < rows.size(); ++i) ASSERT_GT(rows[i].V_x, rows[i - 1].V_x) << i;
}

TEST(Eraser, FigureThreeRidge) {
  const FigureParams params;
  const auto rows = figure_scan(Figure::position_wavenumber, params);
  ASSERT_EQ(rows.size(), 601u * 101u);
  for (std::size_t j = 0; j < 101; ++j) {
    const auto first = rows.begin() + static_cast<std::ptrdiff_t>(j * 601);
    const auto best = std::max_element(first, first + 601, [](auto& a, auto& b) { return a.V_x < b.V_x; });
    ASSERT_NEAR(best->x, best->k * params.s, params.x_axis.step() / 2.0);
    ASSERT_NEAR(best->V_x, 1.0, 1e-12);
  }
}

TEST(Eraser, EmptyGridRejected) {
  FigureParams params;
  params.x_axis.points = 0;
  EXPECT_THROW(figure_scan(Figure::position, params), InvalidArgument);
}

TEST(EraserProperty, ComplementarityEquality) {
  whichway::testing::ParamSource src(42);
  for (int i = 0; i < 1000; ++i) {
    const auto w = src.next();
    const auto r = conditioned(w.lambda_plus, w.lambda_minus, w.phi, w.d, w.k, w.s, w.x);
    ASSERT_NEAR(r.V_x * r.V_x + r.K_x * r.K_x, 1.0, 1e-12);
    ASSERT_GE(r.V_x, 0.0);
    ASSERT_LE(r.V_x, 1.0 + 1e-15);
  }
}

TEST(EraserProperty, ClosedFormMatchesProjection) {
  whichway::testing::ParamSource src(43);
  for (int i = 0; i < 500; ++i) {
    const auto w = src.next();
    const auto a = conditioned_pair(w.lambda_plus, w.lambda_minus, w.d, w.k, w.s, w.x);
    const auto b = conditioned_pair_closed_form(w.lambda_plus, w.lambda_minus, w.d, w.k, w.s, w.x);
    ASSERT_NEAR(a.visibility, b.visibility, 1e-9);
    ASSERT_NEAR(a.knowledge, b.knowledge, 1e-9);
  }
}

TEST(EraserProperty, BalancedIsSechTanh) {
  whichway::testing::ParamSource src(44);
  for (int i = 0; i < 500; ++i) {
    const auto w = src.next();
    const double dl = delta(w.d, w.k, w.s, w.x);
    const auto p = conditioned_pair(kBalanced, kBalanced, w.d, w.k, w.s, w.x);
    ASSERT_NEAR(p.visibility, 1.0 / std::cosh(dl), 1e-12);
    ASSERT_NEAR(p.knowledge, std::abs(std::tanh(dl)), 1e-12);
    ASSERT_NEAR(conditioned_visibility_balanced(w.d, w.k, w.s, w.x), p.visibility, 1e-12);
  }
}

TEST(EraserProperty, PhaseIndependence) {
  whichway::testing::ParamSource src(45);
  for (int i = 0; i < 300; ++i) {
    const auto w = src.next();
    const auto a = conditioned(w.lambda_plus, w.lambda_minus, 0.0, w.d, w.k, w.s, w.x);
    const auto b = conditioned(w.lambda_plus, w.lambda_minus, w.phi, w.d, w.k, w.s, w.x);
    ASSERT_NEAR(a.V_x, b.V_x, 1e-12);
    ASSERT_NEAR(a.K_x, b.K_x, 1e-12);
  }
}

TEST(EraserProperty, KnowledgeIsBayesDifference) {
  whichway::testing::ParamSource src(46);
  for (int i = 0; i < 300; ++i) {
    const auto w = src.next();
    const double wp = w.lambda_plus * w.lambda_plus * density(PacketParams{w.d, w.k, w.s, Slit::plus}, w.x);
    const double wm = w.lambda_minus * w.lambda_minus * density(PacketParams{w.d, w.k, w.s, Slit::minus}, w.x);
    if (wp + wm < 1e-250) continue;
    const double bayes = std::abs(wp - wm) / (wp + wm);
    ASSERT_NEAR(conditioned_pair(w.lambda_plus, w.lambda_minus, w.d, w.k, w.s, w.x).knowledge, bayes, 1e-9);
  }
}

TEST(EraserProperty, SymmetricAboutLocus) {
  whichway::testing::ParamSource src(47);
  for (int i = 0; i < 200; ++i) {
    const auto w = src.next();
    const double locus = eraser_locus(w.d, w.k, w.s);
    const double off = src.uniform(0.0, 4.0);
    const double left = conditioned_visibility_balanced(w.d, w.k, w.s, locus - off);
    const double right = conditioned_visibility_balanced(w.d, w.k, w.s, locus + off);
    ASSERT_NEAR(left, right, 1e-12);
    ASSERT_LE(left, conditioned_visibility_balanced(w.d, w.k, w.s, locus));
  }
}

TEST(EraserProperty, LocusIsArgmaxOnGrid) {
  whichway::testing::ParamSource src(48);
  const AxisGrid axis{-10.0, 10.0, 2001};
  for (int i = 0; i < 50; ++i) {
    const double d = src.uniform(0.5, 8.0);
    const double k = src.uniform(-2.0, 2.0);
    const double s = src.uniform(0.0, 3.0);
    ASSERT_NEAR(eraser_locus_on_grid(d, k, s, axis), eraser_locus(d, k, s), axis.step());
  }
}
