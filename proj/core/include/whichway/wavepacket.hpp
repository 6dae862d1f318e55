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

// Free Gaussian wave packets behind the two slits.
//
// Everything is dimensionless. Lengths are in units of the initial packet
// width b, wave numbers in units of 1/b and time in units of the spreading
// scale tau = m b^2 / hbar:
//
//   X = x/b,  D = d/b,  K = k b,  s = t/tau,  B(s)/b = sqrt(1 + s^2).
//
// With these substitutions the slit-(+/-) packet is
//
//   psi(X, s) = (B sqrt(pi))^(-1/2)
//             * exp( -(X -/+ D/2 - K s)^2 (1 - i s) / (2 B^2)
//                    - i K^2 s / 2 + i K X ),
//
// and densities come out in units of 1/b. The global phase -i K^2 s / 2 is
// kept so that amplitude-level comparisons against quadrature match exactly.

#include <complex>
#include <span>

#include "whichway/quadrature.hpp"

namespace whichway {

using Complex = std::complex<double>;

/// Which slit a packet went through. The value is the sign of the D/2 offset.
enum class Slit : int { plus = +1, minus = -1 };

inline double sign_of(Slit slit) { return static_cast<double>(static_cast<int>(slit)); }
inline Slit opposite(Slit slit) { return slit == Slit::plus ? Slit::minus : Slit::plus; }

struct PacketParams {
  double d = 4.0;  ///< slit separation D = d/b
  double k = 0.0;  ///< transverse wave number K = k b
  double s = 0.0;  ///< propagation time t/tau
  Slit slit = Slit::plus;

  /// Throws InvalidArgument unless d >= 0, s >= 0 and all fields are finite.
  void validate() const;

  /// Copy of these parameters for the other slit.
  PacketParams mirrored() const;

  /// True when both packets belong to the same (d, k, s) family.
  bool same_family(const PacketParams& other) const;

  friend bool operator==(const PacketParams&, const PacketParams&) = default;
};

/// B(t)/b.
double packet_width(double s);

/// Mean of |psi|^2: +/-D/2 + K s.
double packet_center(const PacketParams& p);

/// Natural log of psi(X, s); finite even where psi itself underflows.
Complex log_evaluate(const PacketParams& p, double x);

/// psi(X, s). Throws InvalidArgument for a non-finite x.
Complex evaluate(const PacketParams& p, double x);

/// |psi(X, s)|^2 in units of 1/b.
double density(const PacketParams& p, double x);

/// <psi_+|psi_-> = exp(-D^2/4). Real and time independent.
double overlap_analytic(double d);

/// Probability mass of |psi|^2 that falls outside [grid.lo, grid.hi].
double tail_mass(const PacketParams& p, const QuadratureGrid& grid);

/// Default window: every packet's center +/- 8 B(s), 4096 Simpson intervals.
QuadratureGrid default_grid(std::span<const PacketParams> packets, std::size_t intervals = 4096);
QuadratureGrid default_grid(const PacketParams& p, std::size_t intervals = 4096);

/// Largest tail mass tolerated outside a quadrature window.
inline constexpr double kMaxTailMass = 1e-10;

/// Throws GridError if any packet leaks more than kMaxTailMass outside the grid.
void check_grid_covers(std::span<const PacketParams> packets, const QuadratureGrid& grid);

/// Simpson integral of conj(psi_1) psi_2 over the grid.
Complex overlap_quadrature(const PacketParams& p1, const PacketParams& p2,
                           const QuadratureGrid& grid);
Complex overlap_quadrature(const PacketParams& p1, const PacketParams& p2);

}  // namespace whichway
