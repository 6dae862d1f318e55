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

#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"
#include "verify.hpp"

namespace whichway::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariantFailure = 1;
inline constexpr int kExitInvalidInput = 2;

/// 17 significant digits, locale independent.
std::string format_double(double v);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

/// Thrown when an emitted row fails its write-time invariant check.
struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string render_figure(Figure figure, const FigureParams& params, OutputFormat format);

struct SampleOutputs {
  std::string histogram;
  /// Empty in JSON mode (everything lives in `histogram`).
  std::string visibility_table;
  std::string summary;
};

SampleOutputs render_sample(const ExperimentConfig& config);

std::string render_waveparticle(const ExperimentConfig& config, OutputFormat format);

std::string render_verify_report(const std::vector<CheckResult>& results);

/// Each command returns a process exit code. `out` empty means stdout.
int cmd_figure(int figure_id, const ExperimentConfig& config, const std::optional<std::string>& out,
               std::ostream& stdout_stream);
int cmd_verify(const ExperimentConfig& config, const VerifyOptions& options, std::ostream& stdout_stream);
int cmd_sample(const ExperimentConfig& config, const std::optional<std::string>& out, std::ostream& stdout_stream);
int cmd_waveparticle(const ExperimentConfig& config, const std::optional<std::string>& out,
                     std::ostream& stdout_stream);

}  // namespace whichway::cli
