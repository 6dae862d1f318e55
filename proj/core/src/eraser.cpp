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

#include <cmath>
#include <string>

#include "whichway/complementarity.hpp"
#include "whichway/error.hpp"

namespace whichway {

namespace {

void require_params(double d, double k, double s, double x) {
  detail::require(std::isfinite(d) && d >= 0.0, "d/b must be finite and >= 0");
  detail::require(std::isfinite(k), "k*b must be finite");
  detail::require(std::isfinite(s) && s >= 0.0, "t/tau must be finite and >= 0");
  detail::require(std::isfinite(x), "x/b must be finite");
}

void require_lambdas(double lambda_plus, double lambda_minus) {
  detail::require(std::abs(lambda_plus * lambda_plus + lambda_minus * lambda_minus - 1.0) <= 1e-12,
                  "path amplitudes must satisfy lambda_+^2 + lambda_-^2 = 1");
}

}  // namespace

double delta(double d, double k, double s, double x) {
  require_params(d, k, s, x);
  return d * (k * s - x) / (1.0 + s * s);
}

double delta_dimensional(double d, double k, double t, double x, double b, double tau) {
  detail::require(b > 0.0 && tau > 0.0, "b and tau must be positive");
  return d * tau * (b * b * k * t - x * tau) / (b * b * (t * t + tau * tau));
}

ConditionedResult conditioned(double lambda_plus, double lambda_minus, double phi, double d,
                              double k, double s, double x) {
  require_params(d, k, s, x);
  const auto state = make_which_way_state(lambda_plus, lambda_minus, phi, d, k, s);
  const auto projection = project_position(state, x);
  const auto posterior = projection.posterior();
  return ConditionedResult{
      .x = x,
      .s = s,
      .k = k,
      .delta = delta(d, k, s, x),
      .V_x = visibility(posterior),
      .K_x = predictability(posterior),
      .posterior = posterior,
      .density = projection.norm_squared,
  };
}

VisibilityKnowledge conditioned_pair(double lambda_plus, double lambda_minus, double d, double k,
                                     double s, double x) {
  const auto r = conditioned(lambda_plus, lambda_minus, 0.0, d, k, s, x);
  return {r.V_x, r.K_x};
}

VisibilityKnowledge conditioned_pair_closed_form(double lambda_plus, double lambda_minus, double d,
                                                 double k, double s, double x) {
  require_lambdas(lambda_plus, lambda_minus);
  const double dl = delta(d, k, s, x);
  // Numerator and denominator share a factor exp(|delta|); dividing it out
  // keeps cosh and sinh finite for large |delta|.
  const double up = std::exp(dl - std::abs(dl));
  const double down = std::exp(-dl - std::abs(dl));
  const double cosh_scaled = 0.5 * (up + down);
  const double sinh_scaled = 0.5 * (up - down);
  const double pp = lambda_plus * lambda_plus;
  const double mm = lambda_minus * lambda_minus;
  const double minus_term = mm * (cosh_scaled + sinh_scaled);
  const double plus_term = pp * (cosh_scaled - sinh_scaled);
  const double denom = std::abs(minus_term + plus_term);
  return {
      2.0 * std::abs(lambda_plus) * std::abs(lambda_minus) * std::exp(-std::abs(dl)) / denom,
      std::abs(minus_term - plus_term) / denom,
  };
}

double conditioned_visibility_balanced(double d, double k, double s, double x) {
  return 1.0 / std::cosh(delta(d, k, s, x));
}

double eraser_locus(double d, double k, double s) {
  require_params(d, k, s, 0.0);
  return k * s;
}

double AxisGrid::value(std::size_t i) const {
  if (points == 1) return lo;
  if (i + 1 == points) return hi;
  return lo + static_cast<double>(i) * step();
}

double AxisGrid::step() const {
  return points > 1 ? (hi - lo) / static_cast<double>(points - 1) : 0.0;
}

void AxisGrid::validate(const char* name) const {
  detail::require(points > 0, std::string(name) + " grid is empty");
  detail::require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi,
                  std::string(name) + " grid needs finite lo <= hi");
}

double eraser_locus_on_grid(double d, double k, double s, const AxisGrid& axis) {
  axis.validate("x");
  double best_x = axis.value(0);
  double best_v = -1.0;
  for (std::size_t i = 0; i < axis.points; ++i) {
    const double x = axis.value(i);
    const double v = conditioned_visibility_balanced(d, k, s, x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  return best_x;
}

std::vector<ConditionedResult> figure_scan(Figure figure, const FigureParams& p) {
  std::vector<ConditionedResult> rows;
  const auto at = [&](double k, double s, double x) {
    return conditioned(p.lambda_plus, p.lambda_minus, p.phi, p.d, k, s, x);
  };
  switch (figure) {
    case Figure::position:
      p.x_axis.validate("x");
      rows.reserve(p.x_axis.points);
      for (std::size_t i = 0; i < p.x_axis.points; ++i) rows.push_back(at(p.k, p.s, p.x_axis.value(i)));
      break;
    case Figure::time:
      p.s_axis.validate("t/tau");
      rows.reserve(p.s_axis.points);
      for (std::size_t i = 0; i < p.s_axis.points; ++i) rows.push_back(at(p.k, p.s_axis.value(i), p.x));
      break;
    case Figure::position_wavenumber:
      p.x_axis.validate("x");
      p.k_axis.validate("k");
      rows.reserve(p.x_axis.points * p.k_axis.points);
      for (std::size_t j = 0; j < p.k_axis.points; ++j)
        for (std::size_t i = 0; i < p.x_axis.points; ++i)
          rows.push_back(at(p.k_axis.value(j), p.s, p.x_axis.value(i)));
      break;
    default:
      detail::fail("unknown figure id " + std::to_string(static_cast<int>(figure)));
  }
  return rows;
}

}  // namespace whichway
