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

#include "whichway/composite.hpp"

namespace whichway {

/// |rho_11 - rho_22|.
double predictability(const DetectorDensity& rho);

/// 2 |rho_12|.
double visibility(const DetectorDensity& rho);

/// 2 lambda_+^2 lambda_-^2 (1 - exp(-D^2/2)) for the two-slit joint state.
double linear_entropy(double lambda_plus, double lambda_minus, double d);

/// 1 - Tr rho^2. Agrees with the closed form above for two-slit states.
double linear_entropy(const DetectorDensity& rho);

/// sqrt(P^2 + 2S). Throws if P^2 + 2S exceeds 1 by more than 1e-12.
double distinguishability(double predictability, double linear_entropy);

struct ComplementaritySet {
  double P = 0.0;
  double V = 0.0;
  double S = 0.0;
  double D = 0.0;
  /// |P^2 + V^2 + 2S - 1|
  double residual_identity = 0.0;
  /// |D^2 + V^2 - 1|
  double residual_distinguishability = 0.0;
};

ComplementaritySet full_set(double lambda_plus, double lambda_minus, double phi, double d);

}  // namespace whichway
