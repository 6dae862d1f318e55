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

// Single-cavity protocol that leaves the cavity mode in a "wave" state, a
// "particle" state, or a superposition of the two depending on where the
// atom lands on the screen.
//
//   1. A pi/2 pulse in the cavity in front of slit +:
//        |0+>|e> -> (|0+>|e> + |1+>|g>) / sqrt(2)
//   2. A Ramsey zone behind it:  |g> -> |g> - |e>,  |e> -> |g> + |e>
//      (with an extra 1/sqrt(2) under Convention::unitary).
//   3. Keep only atoms detected in |e>.
//   4. A click at X leaves the mode in
//        c_+ psi_+(X) (|0+> - |1+>)/sqrt(2) + c_- psi_-(X) |0+>.
//
// Atoms through slit - meet no field and stay in |0+>|e>.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "whichway/composite.hpp"

namespace whichway {

enum class Convention {
  /// Ramsey maps g -> g - e, e -> g + e without 1/sqrt(2); states are unnormalized.
  paper,
  /// Ramsey maps as a proper rotation.
  unitary,
};

std::string to_string(Convention c);

enum class Detector { D1, D2, D3, none };

std::string to_string(Detector d);

/// Half-open interval [lo, hi) in x/b.
struct Region {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x < hi; }
};

/// D1 sits on the slit-+ side, D3 on the slit-- side, D2 at the center.
struct DetectorRegions {
  Region d1{1.0, 5.0};
  Region d2{-1.0, 1.0};
  Region d3{-5.0, -1.0};

  /// Throws InvalidArgument on empty or overlapping intervals.
  void validate() const;
  const Region& operator[](Detector d) const;
};

struct ProtocolConfig {
  double lambda_plus = 0.70710678118654752;
  double lambda_minus = 0.70710678118654752;
  double phi = 0.0;
  double d = 4.0;
  double k = 0.0;
  double s = 1.0;
  Convention convention = Convention::paper;
  DetectorRegions regions;

  void validate() const;
};

/// Two-component state over {|0+>, |1+>}.
struct ModeState {
  std::array<Complex, 2> v{};
  bool normalized = false;

  double norm() const;
  ModeState normalized_copy() const;
};

/// (|0+> - |1+>) / sqrt(2)
ModeState wave_state();
/// |0+>
ModeState particle_state();
/// (|w> + |p>) / || |w> + |p> ||
ModeState wave_particle_superposition();

/// |<a|b>|^2 for normalized copies of a and b.
double fidelity(const ModeState& a, const ModeState& b);
/// <a|rho|a> for normalized a.
double fidelity(const ModeState& a, const DetectorDensity& rho);

/// lambda_+ psi_+ |0+>|e> + lambda_- e^{i phi} psi_- |0+>|e>; lambdas need not be normalized.
BranchState make_single_cavity_state(double lambda_plus, double lambda_minus, double phi, double d,
                                double k, double s);

/// The pi/2 cavity pulse on one slit-+ branch in |0+>|e>. Throws for any other branch.
std::vector<Branch> apply_pi_half(const Branch& branch);
/// Applies the pulse to every slit-+ branch; slit-- branches pass through.
BranchState apply_pi_half(const BranchState& state);

/// Ramsey rotation on slit-+ branches only.
BranchState apply_ramsey(const BranchState& state, Convention convention);

struct PostSelection {
  BranchState state;
  /// Retained squared norm over total squared norm, packet overlaps included.
  double probability = 0.0;
  /// Same ratio with slit paths treated as orthogonal.
  double path_probability = 0.0;
};

/// Keeps the branches whose atom is in |e>.
PostSelection postselect_excited(const BranchState& state);

/// Keeps the branches whose atom is in |g>.
PostSelection postselect_ground(const BranchState& state);

struct ProtocolStages {
  BranchState initial;
  BranchState after_pulse;
  BranchState after_ramsey;
  PostSelection excited;
};

ProtocolStages run_protocol(const ProtocolConfig& config);

struct Click {
  ModeState mode;
  /// Unnormalized squared norm of the projected state (screen weight at x).
  double density = 0.0;
  bool degenerate = false;
};

/// Densities below this are treated as no detection.
inline constexpr double kDegenerateDensity = 1e-300;

Click click_state(const BranchState& postselected, double x);

/// Region membership with [lo, hi) tie-breaking.
Detector classify_click(double x, const DetectorRegions& regions);

struct DetectorReport {
  Detector detector = Detector::none;
  Region region;
  /// Probability of a click in this region given an |e> detection.
  double probability = 0.0;
  /// Mode state averaged over clicks in the region.
  std::optional<DetectorDensity> mean_state;
  /// Mode state at the region's midpoint.
  ModeState center_state;
  double fidelity_wave = 0.0;
  double fidelity_particle = 0.0;
  double fidelity_superposition = 0.0;
  double center_fidelity_wave = 0.0;
  double center_fidelity_particle = 0.0;
  double center_fidelity_superposition = 0.0;
};

/// Per-detector statistics by Simpson quadrature over each region.
std::array<DetectorReport, 3> detector_reports(const ProtocolConfig& config,
                                               std::size_t intervals_per_region = 2048);

}  // namespace whichway
