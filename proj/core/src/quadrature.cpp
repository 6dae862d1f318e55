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

#include "whichway/quadrature.hpp"

#include <cmath>

#include "whichway/error.hpp"

namespace whichway {

double QuadratureGrid::node(std::size_t i) const {
  if (i == intervals) return hi;
  return lo + static_cast<double>(i) * step();
}

std::vector<double> QuadratureGrid::nodes() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = node(i);
  return out;
}

void QuadratureGrid::validate() const {
  detail::require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
                  "quadrature grid needs finite lo < hi");
  detail::require(intervals >= 2 && intervals % 2 == 0,
                  "Simpson quadrature needs an even interval count >= 2");
}

namespace {

template <typename T>
T simpson_impl(std::span<const T> f, double h) {
  detail::require(f.size() >= 3 && f.size() % 2 == 1,
                  "Simpson quadrature needs an odd sample count >= 3");
  T odd{};
  T even{};
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    if (i % 2 == 1)
      odd += f[i];
    else
      even += f[i];
  }
  return (f.front() + f.back() + 4.0 * odd + 2.0 * even) * (h / 3.0);
}

}  // namespace

double simpson(std::span<const double> samples, double step) {
  return simpson_impl(samples, step);
}

std::complex<double> simpson(std::span<const std::complex<double>> samples, double step) {
  return simpson_impl(samples, step);
}

}  // namespace whichway
