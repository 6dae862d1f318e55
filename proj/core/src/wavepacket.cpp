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

#include "whichway/wavepacket.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "whichway/error.hpp"

namespace whichway {

void PacketParams::validate() const {
  detail::require(std::isfinite(d) && d >= 0.0, "packet: slit separation d/b must be finite and >= 0");
  detail::require(std::isfinite(k), "packet: wave number k*b must be finite");
  detail::require(std::isfinite(s) && s >= 0.0, "packet: time t/tau must be finite and >= 0");
  detail::require(slit == Slit::plus || slit == Slit::minus, "packet: slit must be + or -");
}

PacketParams PacketParams::mirrored() const {
  PacketParams out = *this;
  out.slit = opposite(slit);
  return out;
}

bool PacketParams::same_family(const PacketParams& other) const {
  return d == other.d && k == other.k && s == other.s;
}

double packet_width(double s) { return std::sqrt(1.0 + s * s); }

double packet_center(const PacketParams& p) { return sign_of(p.slit) * 0.5 * p.d + p.k * p.s; }

Complex log_evaluate(const PacketParams& p, double x) {
  detail::require(std::isfinite(x), "packet: position must be finite");
  const double width_sq = 1.0 + p.s * p.s;
  const double offset = x - packet_center(p);
  const double log_norm = -0.25 * std::log(width_sq * std::numbers::pi);
  const double gauss = -offset * offset / (2.0 * width_sq);
  // -(offset^2)(1 - i s)/(2 B^2) - i K^2 s/2 + i K X
  const double phase = -gauss * p.s - 0.5 * p.k * p.k * p.s + p.k * x;
  return {log_norm + gauss, phase};
}

Complex evaluate(const PacketParams& p, double x) { return std::exp(log_evaluate(p, x)); }

double density(const PacketParams& p, double x) {
  return std::exp(2.0 * log_evaluate(p, x).real());
}

double overlap_analytic(double d) {
  detail::require(d >= 0.0, "overlap: d/b must be >= 0");
  return std::exp(-d * d / 4.0);
}

double tail_mass(const PacketParams& p, const QuadratureGrid& grid) {
  // |psi|^2 is a normal density with standard deviation B/sqrt(2).
  const double width = packet_width(p.s);
  const double c = packet_center(p);
  return 0.5 * std::erfc((grid.hi - c) / width) + 0.5 * std::erfc((c - grid.lo) / width);
}

QuadratureGrid default_grid(std::span<const PacketParams> packets, std::size_t intervals) {
  detail::require(!packets.empty(), "default_grid: no packets");
  double lo = packet_center(packets.front());
  double hi = lo;
  double width = 0.0;
  for (const auto& p : packets) {
    lo = std::min(lo, packet_center(p));
    hi = std::max(hi, packet_center(p));
    width = std::max(width, packet_width(p.s));
  }
  // For a +/- pair this is [Ks - (D/2 + 8B), Ks + (D/2 + 8B)].
  return QuadratureGrid{lo - 8.0 * width, hi + 8.0 * width, intervals};
}

QuadratureGrid default_grid(const PacketParams& p, std::size_t intervals) {
  const std::array<PacketParams, 2> pair{p, p.mirrored()};
  return default_grid(pair, intervals);
}

void check_grid_covers(std::span<const PacketParams> packets, const QuadratureGrid& grid) {
  grid.validate();
  for (const auto& p : packets) {
    const double tail = tail_mass(p, grid);
    if (tail > kMaxTailMass) {
      std::ostringstream msg;
      msg << "quadrature window [" << grid.lo << ", " << grid.hi << "] too narrow: packet centered at "
          << packet_center(p) << " with width " << packet_width(p.s) << " leaks tail mass " << tail
          << " (limit " << kMaxTailMass << ")";
      throw GridError(msg.str());
    }
  }
}

Complex overlap_quadrature(const PacketParams& p1, const PacketParams& p2,
                           const QuadratureGrid& grid) {
  p1.validate();
  p2.validate();
  const std::array<PacketParams, 2> pair{p1, p2};
  check_grid_covers(pair, grid);
  return integrate(grid, [&](double x) {
    return std::exp(std::conj(log_evaluate(p1, x)) + log_evaluate(p2, x));
  });
}

Complex overlap_quadrature(const PacketParams& p1, const PacketParams& p2) {
  const std::array<PacketParams, 2> pair{p1, p2};
  return overlap_quadrature(p1, p2, default_grid(pair));
}

}  // namespace whichway
