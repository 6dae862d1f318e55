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

#include <string>
#include <vector>

#include "config.hpp"

namespace whichway::cli {

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t cases = 0;
  /// Parameters of the worst case, printed on failure.
  std::string worst_case;

  bool passed() const { return max_residual < tolerance; }
};

struct VerifyOptions {
  /// Mirrors x about the eraser locus in the closed-form route, flipping the
  /// sign of delta. Used to check that the harness actually fails.
  bool inject_fault = false;
};

std::vector<CheckResult> run_invariant_suite(const VerifyConfig& config, const VerifyOptions& options = {});

}  // namespace whichway::cli
