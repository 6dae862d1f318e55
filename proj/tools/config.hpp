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

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "whichway/eraser.hpp"
#include "whichway/sampling.hpp"
#include "whichway/waveparticle.hpp"

namespace whichway::cli {

enum class OutputFormat { csv, json };

struct PhysicsConfig {
  double lambda_plus = 0.70710678118654752;
  double lambda_minus = 0.70710678118654752;
  double phi = 0.0;
  double d = 4.0;
  double k = 0.0;
  double s = 1.0;
};

struct SamplingConfig {
  Scenario scenario = Scenario::which_way;
  Convention convention = Convention::unitary;
  std::size_t n = 100000;
  std::uint64_t seed = 20260417;
  std::size_t shards = 8;
  std::size_t threads = 0;
  std::size_t bins = 120;
  /// Defaults to the eraser locus K s.
  std::optional<double> bin_center;
  double bin_width = 0.1;
  std::size_t phase_scan_points = 64;
  /// Bin centers for the empirical V_x table.
  AxisGrid table_axis{-6.0, 6.0, 25};
};

struct VerifyConfig {
  std::size_t draws = 1000;
  std::size_t oracle_draws = 200;
  std::size_t projection_draws = 500;
  std::uint64_t seed = 7;
};

struct ExperimentConfig {
  PhysicsConfig physics;
  /// Caption parameters for figures 1, 2, 3.
  std::array<FigureParams, 3> figures = default_figures();
  DetectorRegions regions;
  Convention protocol_convention = Convention::paper;
  SamplingConfig sampling;
  VerifyConfig verify;
  OutputFormat format = OutputFormat::csv;

  static std::array<FigureParams, 3> default_figures();

  /// Checks every module precondition; throws InvalidArgument.
  void validate() const;

  ScreenParams screen_params() const;
  ProtocolConfig protocol() const;
};

/// Parses a JSON config. Missing keys keep their defaults; unknown keys throw.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

OutputFormat parse_format(const std::string& name);

}  // namespace whichway::cli
