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

// Joint quanton (x) detector states as short lists of labeled branches.
//
// A branch is (cavity label, atom label, amplitude, packet). Two bases are
// used: the two-mode which-way detector {|1+,0->, |0+,1->} and the single
// cavity mode {|0+>, |1+>}. The atom's internal state {g, e} rides along in
// both so that the single-cavity protocol can reuse everything here.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "whichway/quadrature.hpp"
#include "whichway/wavepacket.hpp"

namespace whichway {

enum class Cavity { one_plus_zero_minus, zero_plus_one_minus, zero_plus, one_plus };
enum class Atom { g, e };
enum class Basis { two_mode, single_mode };

Basis basis_of(Cavity c);
/// Row/column of the cavity label in the 2x2 detector density.
std::size_t basis_index(Cavity c);
std::string to_string(Cavity c);
std::string to_string(Atom a);

struct BranchLabel {
  Cavity cavity;
  Atom atom;
  friend bool operator==(const BranchLabel&, const BranchLabel&) = default;
};

struct Branch {
  BranchLabel label;
  Complex amplitude;
  PacketParams packet;
};

/// <psi_a|psi_b>; closed form within one (d, k, s) family, quadrature otherwise.
Complex packet_overlap(const PacketParams& a, const PacketParams& b);

struct BranchState {
  Basis basis = Basis::two_mode;
  std::vector<Branch> branches;
  double phi = 0.0;
  double lambda_plus = 1.0;
  double lambda_minus = 0.0;
  bool normalized = true;

  /// Squared norm including packet overlaps between branches that share a label.
  double norm_squared() const;
  double norm_squared_quadrature(const QuadratureGrid& grid) const;
  double norm_squared_quadrature() const;

  /// Squared norm with the slit paths treated as orthogonal: sum of |c|^2.
  /// This is the space on which the slit-local pulse maps act unitarily.
  double path_norm_squared() const;

  QuadratureGrid default_grid(std::size_t intervals = 4096) const;

  /// Throws InvalidArgument if a branch label lies outside the declared basis.
  void validate() const;
};

/// 2x2 density matrix over the two interferometric alternatives.
class DetectorDensity {
 public:
  using Matrix = std::array<std::array<Complex, 2>, 2>;

  static constexpr double kTolerance = 1e-12;

  /// Validates Hermiticity, unit trace and positivity within `tolerance`.
  explicit DetectorDensity(const Matrix& m, double tolerance = kTolerance);

  /// Pure state |v><v| / <v|v>. Throws if v vanishes.
  static DetectorDensity pure(Complex a0, Complex a1);

  const Complex& operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }
  const Matrix& matrix() const { return m_; }

  double trace() const;
  /// Tr rho^2.
  double purity() const;
  /// Ascending.
  std::array<double, 2> eigenvalues() const;
  double hermiticity_error() const;

 private:
  Matrix m_;
};

/// Partial trace over the continuous coordinate, closed form with packet overlaps.
DetectorDensity reduce_to_detector(const BranchState& state);

/// Same partial trace by brute-force quadrature of c_i c_j* psi_i psi_j*.
DetectorDensity reduce_to_detector_quadrature(const BranchState& state, const QuadratureGrid& grid);
DetectorDensity reduce_to_detector_quadrature(const BranchState& state);

/// |lambda_+ psi_+ |1+,0->  +  lambda_- e^{i phi} psi_- |0+,1->| (x) |g>.
BranchState make_which_way_state(double lambda_plus, double lambda_minus, double phi, double d,
                                double k, double s);

/// Discrete state left after a position measurement with outcome x.
///
/// Amplitudes are kept as scaled * exp(log_scale) so that posteriors in the
/// far tails stay well defined when the raw amplitudes underflow.
struct PositionProjection {
  Basis basis = Basis::two_mode;
  double x = 0.0;
  std::vector<std::pair<BranchLabel, Complex>> scaled;
  double log_scale = 0.0;
  /// Screen probability density at x: sum of |amplitude|^2.
  double norm_squared = 0.0;

  std::vector<std::pair<BranchLabel, Complex>> amplitudes() const;
  /// Amplitude summed over the atom label; zero if the label is absent.
  Complex scaled_amplitude(BranchLabel label) const;
  bool degenerate() const;
  /// Normalized cavity density matrix (atom traced out). Throws when degenerate.
  DetectorDensity posterior() const;
};

PositionProjection project_position(const BranchState& state, double x);

}  // namespace whichway
