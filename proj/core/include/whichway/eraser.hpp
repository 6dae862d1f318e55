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

#pragma once

// Selective position measurements on the screen.
//
// After the atom is found at X the cavity modes are left in
//   lambda_+ psi_+(X) |1+,0->  +  lambda_- e^{i phi} psi_-(X) |0+,1->.
// The ratio |psi_-|^2 / |psi_+|^2 equals exp(2 delta) with
//
//   delta = D (K s - X) / (1 + s^2),
//
// which is d tau (b^2 k t - x tau) / (b^2 (t^2 + tau^2)) with b = tau = 1.

#include <cstddef>
#include <vector>

#include "whichway/composite.hpp"

namespace whichway {

/// Dimensionless delta = D (K s - X) / (1 + s^2).
double delta(double d, double k, double s, double x);

/// delta in dimensional form, with explicit b and tau.
double delta_dimensional(double d, double k, double t, double x, double b, double tau);

struct VisibilityKnowledge {
  double visibility = 0.0;
  double knowledge = 0.0;
};

struct ConditionedResult {
  double x = 0.0;
  double s = 0.0;
  double k = 0.0;
  double delta = 0.0;
  double V_x = 0.0;
  double K_x = 0.0;
  DetectorDensity posterior;
  /// Screen density at x in the which-way arrangement (1/b units).
  double density = 0.0;
};

/// Conditioned visibility and knowledge from the projected posterior state.
ConditionedResult conditioned(double lambda_plus, double lambda_minus, double phi, double d,
                              double k, double s, double x);

/// (V_x, K_x) via the projection route (phi does not affect either).
VisibilityKnowledge conditioned_pair(double lambda_plus, double lambda_minus, double d, double k,
                                     double s, double x);

/// (V_x, K_x) from the cosh/sinh ratio formulas.
VisibilityKnowledge conditioned_pair_closed_form(double lambda_plus, double lambda_minus, double d,
                                                 double k, double s, double x);

/// sech(delta); valid for lambda_+ = lambda_- = 1/sqrt(2).
double conditioned_visibility_balanced(double d, double k, double s, double x);

/// Screen position of complete erasure, X* = K s.
double eraser_locus(double d, double k, double s);

/// Uniform 1-D axis with `points` samples including both endpoints.
struct AxisGrid {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t points = 601;

  double value(std::size_t i) const;
  double step() const;
  void validate(const char* name) const;
};

/// Grid point of maximal balanced V_x over `axis` (first one on ties).
double eraser_locus_on_grid(double d, double k, double s, const AxisGrid& axis);

enum class Figure { position = 1, time = 2, position_wavenumber = 3 };

struct FigureParams {
  double lambda_plus = 0.70710678118654752;
  double lambda_minus = 0.70710678118654752;
  double phi = 0.0;
  double d = 4.0;
  /// Fixed time for the position and position/wavenumber scans.
  double s = 1.0;
  /// Fixed wave number for the position and time scans.
  double k = 0.0;
  /// Fixed screen position for the time scan.
  double x = 1.0;
  AxisGrid x_axis{-6.0, 6.0, 601};
  AxisGrid s_axis{0.0, 5.0, 601};
  AxisGrid k_axis{-2.0, 2.0, 101};
};

/// Rows ordered by grid index; for the 2-D scan k is the outer index.
std::vector<ConditionedResult> figure_scan(Figure figure, const FigureParams& params);

}  // namespace whichway
