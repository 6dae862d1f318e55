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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace whichway {

/// Uniform grid on [lo, hi] with an even number of Simpson intervals.
struct QuadratureGrid {
  double lo = -10.0;
  double hi = 10.0;
  std::size_t intervals = 4096;

  double step() const { return (hi - lo) / static_cast<double>(intervals); }
  std::size_t size() const { return intervals + 1; }
  double node(std::size_t i) const;
  std::vector<double> nodes() const;

  /// Throws InvalidArgument unless lo < hi, intervals is even and >= 2.
  void validate() const;
};

/// Composite Simpson rule over samples taken at the nodes of a uniform grid.
double simpson(std::span<const double> samples, double step);
std::complex<double> simpson(std::span<const std::complex<double>> samples, double step);

/// Integrates f over the grid with composite Simpson.
template <typename F>
auto integrate(const QuadratureGrid& grid, F&& f) {
  using Value = decltype(f(0.0));
  grid.validate();
  std::vector<Value> samples(grid.size());
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = f(grid.node(i));
  return simpson(std::span<const Value>(samples), grid.step());
}

}  // namespace whichway
