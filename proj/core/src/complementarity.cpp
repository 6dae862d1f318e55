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

#include <algorithm>
#include <cmath>

#include "whichway/error.hpp"

namespace whichway {

double predictability(const DetectorDensity& rho) {
  return std::abs(rho(0, 0).real() - rho(1, 1).real());
}

double visibility(const DetectorDensity& rho) { return 2.0 * std::abs(rho(0, 1)); }

double linear_entropy(double lambda_plus, double lambda_minus, double d) {
  detail::require(std::abs(lambda_plus * lambda_plus + lambda_minus * lambda_minus - 1.0) <= 1e-12,
                  "path amplitudes must satisfy lambda_+^2 + lambda_-^2 = 1");
  detail::require(d >= 0.0, "d/b must be >= 0");
  const double pp = lambda_plus * lambda_plus;
  const double mm = lambda_minus * lambda_minus;
  // -expm1 keeps 1 - exp(-D^2/2) accurate for small D.
  return 2.0 * pp * mm * -std::expm1(-0.5 * d * d);
}

double linear_entropy(const DetectorDensity& rho) { return 1.0 - rho.purity(); }

double distinguishability(double predictability, double linear_entropy) {
  const double sq = predictability * predictability + 2.0 * linear_entropy;
  detail::require(sq <= 1.0 + 1e-12, "inconsistent inputs: P^2 + 2S exceeds 1");
  detail::require(sq >= -1e-12, "inconsistent inputs: P^2 + 2S is negative");
  return std::sqrt(std::max(sq, 0.0));
}

ComplementaritySet full_set(double lambda_plus, double lambda_minus, double phi, double d) {
  const auto rho = reduce_to_detector(make_which_way_state(lambda_plus, lambda_minus, phi, d, 0.0, 0.0));
  ComplementaritySet out;
  out.P = predictability(rho);
  out.V = visibility(rho);
  out.S = linear_entropy(lambda_plus, lambda_minus, d);
  out.D = distinguishability(out.P, out.S);
  out.residual_identity = std::abs(out.P * out.P + out.V * out.V + 2.0 * out.S - 1.0);
  out.residual_distinguishability = std::abs(out.D * out.D + out.V * out.V - 1.0);
  return out;
}

}  // namespace whichway
