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

#include "whichway/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "whichway/complementarity.hpp"
#include "whichway/error.hpp"
#include "whichway/random.hpp"

namespace whichway {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::which_way: return "which_way";
    case Scenario::no_detector: return "no_detector";
    case Scenario::postselected_excited: return "postselected_excited";
  }
  return "?";
}

ScreenDensity::ScreenDensity(const ScreenParams& params) : params_(params) {
  const auto& p = params_;
  switch (p.scenario) {
    case Scenario::which_way:
      state_ = make_which_way_state(p.lambda_plus, p.lambda_minus, p.phi, p.d, p.k, p.s);
      break;
    case Scenario::no_detector:
      detail::require(std::abs(p.lambda_plus * p.lambda_plus + p.lambda_minus * p.lambda_minus - 1.0) <= 1e-12,
                      "path amplitudes must satisfy lambda_+^2 + lambda_-^2 = 1");
      // Both paths leave the same detector state behind.
      state_ = make_single_cavity_state(p.lambda_plus, p.lambda_minus, p.phi, p.d, p.k, p.s);
      break;
    case Scenario::postselected_excited: {
      ProtocolConfig config;
      config.lambda_plus = p.lambda_plus;
      config.lambda_minus = p.lambda_minus;
      config.phi = p.phi;
      config.d = p.d;
      config.k = p.k;
      config.s = p.s;
      config.convention = p.convention;
      const auto stages = run_protocol(config);
      state_ = stages.excited.state;
      denominator_ = stages.after_ramsey.norm_squared();
      break;
    }
    default:
      detail::fail("unknown scenario");
  }
  detail::require(denominator_ > 0.0, "screen density: state vanishes");
  normalization_ = state_.norm_squared() / denominator_;
  detail::require(normalization_ > 0.0 && std::isfinite(normalization_),
                  "screen density: nothing reaches the screen (destructive interference)");
}

double ScreenDensity::weight_at(double x) const {
  return project_position(state_, x).norm_squared / denominator_;
}

double ScreenDensity::density_at(double x) const { return weight_at(x) / normalization_; }

QuadratureGrid ScreenDensity::window(std::size_t intervals) const { return state_.default_grid(intervals); }

CdfTable::CdfTable(const ScreenDensity& density, const QuadratureGrid& grid) : grid_(grid) {
  grid_.validate();
  cdf_.resize(grid_.size());
  const double h = grid_.step();
  double previous = density.density_at(grid_.node(0));
  cdf_[0] = 0.0;
  for (std::size_t i = 1; i < cdf_.size(); ++i) {
    const double current = density.density_at(grid_.node(i));
    cdf_[i] = cdf_[i - 1] + 0.5 * h * (previous + current);
    previous = current;
  }
  const double total = cdf_.back();
  detail::require(total > 0.0, "cumulative table has no mass");
  for (auto& c : cdf_) c /= total;
}

double CdfTable::inverse(double u) const {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.begin()) return grid_.lo;
  if (it == cdf_.end()) return grid_.hi;
  const auto i = static_cast<std::size_t>(it - cdf_.begin()) - 1;
  const double lo = cdf_[i];
  const double hi = cdf_[i + 1];
  const double frac = hi > lo ? (u - lo) / (hi - lo) : 0.0;
  return grid_.node(i) + frac * grid_.step();
}

Histogram make_histogram(std::span<const double> draws, double lo, double hi, std::size_t bins) {
  detail::require(bins > 0 && lo < hi, "histogram needs bins > 0 and lo < hi");
  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    h.edges[i] = i == bins ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  h.counts.assign(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : draws) {
    if (x < lo || x >= hi) continue;
    auto bin = static_cast<std::size_t>((x - lo) / width);
    h.counts[std::min(bin, bins - 1)]++;
  }
  return h;
}

SampleRun sample(const ScreenDensity& density, std::size_t n, std::uint64_t seed,
                 const SampleOptions& options) {
  detail::require(n >= 1, "sample count must be >= 1");
  detail::require(options.shards >= 1, "shard count must be >= 1");
  const CdfTable table(density, density.window(options.cdf_intervals));
  const CounterRng rng(seed);

  SampleRun run;
  run.params = density.params();
  run.seed = seed;
  run.n = n;
  run.shards = options.shards;
  run.algorithm = CounterRng::kAlgorithm;
  run.draws.resize(n);

  std::vector<std::size_t> offsets(options.shards + 1, 0);
  for (std::size_t i = 0; i < options.shards; ++i)
    offsets[i + 1] = offsets[i] + n / options.shards + (i < n % options.shards ? 1 : 0);

  auto fill_shard = [&](std::size_t shard) {
    const auto gen = rng.shard(shard);
    for (std::size_t j = offsets[shard]; j < offsets[shard + 1]; ++j)
      run.draws[j] = table.inverse(gen.uniform(j - offsets[shard]));
  };

  std::size_t threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, options.shards);
  if (threads == 1) {
    for (std::size_t i = 0; i < options.shards; ++i) fill_shard(i);
  } else {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < threads; ++t)
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < options.shards; i += threads) fill_shard(i);
      });
  }

  const auto grid = table.grid();
  run.histogram = make_histogram(run.draws, grid.lo, grid.hi, options.histogram_bins);
  double sum = 0.0;
  std::size_t negative = 0;
  for (double x : run.draws) {
    sum += x;
    if (x < 0.0) ++negative;
  }
  run.stats.mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (double x : run.draws) sq += (x - run.stats.mean) * (x - run.stats.mean);
  run.stats.variance = n > 1 ? sq / static_cast<double>(n - 1) : 0.0;
  run.stats.fraction_negative = static_cast<double>(negative) / static_cast<double>(n);
  return run;
}

DetectorDensity posterior_at(const ScreenParams& p, double x) {
  switch (p.scenario) {
    case Scenario::which_way:
      return project_position(make_which_way_state(p.lambda_plus, p.lambda_minus, p.phi, p.d, p.k, p.s), x)
          .posterior();
    case Scenario::postselected_excited: {
      ProtocolConfig config;
      config.lambda_plus = p.lambda_plus;
      config.lambda_minus = p.lambda_minus;
      config.phi = p.phi;
      config.d = p.d;
      config.k = p.k;
      config.s = p.s;
      config.convention = p.convention;
      const auto click = click_state(run_protocol(config).excited.state, x);
      detail::require(!click.degenerate, "posterior undefined: click density vanishes");
      return DetectorDensity::pure(click.mode.v[0], click.mode.v[1]);
    }
    default:
      detail::fail("no detector posterior exists in the " + to_string(p.scenario) + " scenario");
  }
}

namespace {

double fringe_contrast(const DetectorDensity& rho, std::size_t points) {
  double lo = 1.0;
  double hi = 0.0;
  for (std::size_t j = 0; j < points; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(points);
    const double p = 0.5 * (rho.trace() + 2.0 * (std::polar(1.0, theta) * rho(0, 1)).real());
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  return hi + lo > 0.0 ? (hi - lo) / (hi + lo) : 0.0;
}

}  // namespace

std::optional<VisibilityEstimate> empirical_conditioned_visibility(const SampleRun& run,
                                                                   double center, double width,
                                                                   std::size_t phase_scan_points) {
  detail::require(std::isfinite(center) && std::isfinite(width) && width > 0.0,
                  "bin needs a finite center and positive width");
  const double lo = center - 0.5 * width;
  const double hi = center + 0.5 * width;
  VisibilityEstimate est;
  double total = 0.0;
  for (double x : run.draws) {
    if (x < lo || x >= hi) continue;
    const auto rho = posterior_at(run.params, x);
    total += phase_scan_points > 0 ? fringe_contrast(rho, phase_scan_points) : visibility(rho);
    ++est.count;
  }
  if (est.count == 0) return std::nullopt;
  est.value = total / static_cast<double>(est.count);
  return est;
}

double ks_statistic(std::span<const double> draws, const std::function<double(double)>& cdf) {
  detail::require(!draws.empty(), "KS statistic needs at least one draw");
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    worst = std::max({worst, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return worst;
}

std::size_t count_local_maxima(const ScreenDensity& density, const QuadratureGrid& grid) {
  grid.validate();
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = density.density_at(grid.node(i));
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < f.size(); ++i)
    if (f[i] > f[i - 1] && f[i] > f[i + 1]) ++count;
  return count;
}

std::array<std::size_t, 3> region_counts(std::span<const double> draws, const DetectorRegions& regions) {
  regions.validate();
  std::array<std::size_t, 3> out{};
  for (double x : draws) {
    switch (classify_click(x, regions)) {
      case Detector::D1: ++out[0]; break;
      case Detector::D2: ++out[1]; break;
      case Detector::D3: ++out[2]; break;
      case Detector::none: break;
    }
  }
  return out;
}

}  // namespace whichway
