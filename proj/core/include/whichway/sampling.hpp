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

// Monte Carlo screen detections.
//
// Three screen densities are available:
//   which_way            two-mode detector present; no cross term survives
//   no_detector          both paths carry the same detector state, so the
//                        interference term 2 lambda_+ lambda_- Re[e^{i phi} psi_+* psi_-] stays
//   postselected_excited single-cavity protocol, atoms detected in |e>
//
// Draws use inverse-CDF lookup on a fixed cumulative table, so a run is a
// pure function of (parameters, n, seed, shard count).

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "whichway/composite.hpp"
#include "whichway/waveparticle.hpp"

namespace whichway {

enum class Scenario { which_way, no_detector, postselected_excited };

std::string to_string(Scenario s);

struct ScreenParams {
  double lambda_plus = 0.70710678118654752;
  double lambda_minus = 0.70710678118654752;
  double phi = 0.0;
  double d = 4.0;
  double k = 0.0;
  double s = 1.0;
  Scenario scenario = Scenario::which_way;
  /// Ramsey bookkeeping for the post-selected scenario.
  Convention convention = Convention::unitary;
};

class ScreenDensity {
 public:
  explicit ScreenDensity(const ScreenParams& params);

  /// Unnormalized weight. Integrates to 1 (which_way), to the norm of the
  /// coherent two-path state (no_detector), or to the |e> post-selection
  /// probability (postselected_excited).
  double weight_at(double x) const;
  /// Probability density (weight / normalization).
  double density_at(double x) const;
  double normalization() const { return normalization_; }

  const ScreenParams& params() const { return params_; }
  /// Window holding all but ~1e-29 of the mass.
  QuadratureGrid window(std::size_t intervals = 4096) const;

 private:
  ScreenParams params_;
  BranchState state_;
  double denominator_ = 1.0;
  double normalization_ = 1.0;
};

/// Cumulative table on a uniform grid, inverted with linear interpolation.
class CdfTable {
 public:
  CdfTable(const ScreenDensity& density, const QuadratureGrid& grid);

  double inverse(double u) const;
  const QuadratureGrid& grid() const { return grid_; }
  std::span<const double> values() const { return cdf_; }

 private:
  QuadratureGrid grid_;
  std::vector<double> cdf_;
};

struct Histogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;
};

Histogram make_histogram(std::span<const double> draws, double lo, double hi, std::size_t bins);

struct SampleStats {
  double mean = 0.0;
  double variance = 0.0;
  double fraction_negative = 0.0;
};

struct SampleOptions {
  std::size_t shards = 8;
  /// 0 selects std::thread::hardware_concurrency().
  std::size_t threads = 0;
  std::size_t cdf_intervals = 4096;
  std::size_t histogram_bins = 120;
};

struct SampleRun {
  ScreenParams params;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t shards = 0;
  std::string algorithm;
  /// Ordered by shard, then by index within the shard.
  std::vector<double> draws;
  Histogram histogram;
  SampleStats stats;
};

/// n draws from the normalized screen density. Throws for n == 0.
SampleRun sample(const ScreenDensity& density, std::size_t n, std::uint64_t seed,
                 const SampleOptions& options = {});

/// Detector posterior at x: the two-mode state for which_way, the cavity
/// mode state for postselected_excited. Not defined for no_detector.
DetectorDensity posterior_at(const ScreenParams& params, double x);

struct VisibilityEstimate {
  double value = 0.0;
  std::size_t count = 0;
};

/// Mean posterior visibility of the draws in [center - width/2, center + width/2).
/// With phase_scan_points > 0 each posterior's visibility is read off as the
/// fringe contrast over that many analyzer phases; otherwise 2|rho_12| is used.
/// Returns nullopt for an empty bin.
std::optional<VisibilityEstimate> empirical_conditioned_visibility(const SampleRun& run,
                                                                   double center, double width,
                                                                   std::size_t phase_scan_points);

/// Kolmogorov-Smirnov distance between the empirical CDF of `draws` and `cdf`.
double ks_statistic(std::span<const double> draws, const std::function<double(double)>& cdf);

/// Strict interior local maxima of the density sampled on `grid`.
std::size_t count_local_maxima(const ScreenDensity& density, const QuadratureGrid& grid);

/// Draw counts per detector region (D1, D2, D3).
std::array<std::size_t, 3> region_counts(std::span<const double> draws, const DetectorRegions& regions);

}  // namespace whichway
