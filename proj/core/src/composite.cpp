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

#include "whichway/composite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "whichway/error.hpp"

namespace whichway {

Basis basis_of(Cavity c) {
  switch (c) {
    case Cavity::one_plus_zero_minus:
    case Cavity::zero_plus_one_minus:
      return Basis::two_mode;
    case Cavity::zero_plus:
    case Cavity::one_plus:
      return Basis::single_mode;
  }
  detail::fail("unknown cavity label");
}

std::size_t basis_index(Cavity c) {
  switch (c) {
    case Cavity::one_plus_zero_minus:
    case Cavity::zero_plus:
      return 0;
    case Cavity::zero_plus_one_minus:
    case Cavity::one_plus:
      return 1;
  }
  detail::fail("unknown cavity label");
}

std::string to_string(Cavity c) {
  switch (c) {
    case Cavity::one_plus_zero_minus: return "|1+,0->";
    case Cavity::zero_plus_one_minus: return "|0+,1->";
    case Cavity::zero_plus: return "|0+>";
    case Cavity::one_plus: return "|1+>";
  }
  return "?";
}

std::string to_string(Atom a) { return a == Atom::g ? "g" : "e"; }

Complex packet_overlap(const PacketParams& a, const PacketParams& b) {
  if (a.same_family(b)) return a.slit == b.slit ? Complex{1.0} : Complex{overlap_analytic(a.d)};
  return overlap_quadrature(a, b);
}

double BranchState::norm_squared() const {
  Complex total{};
  for (const auto& x : branches)
    for (const auto& y : branches)
      if (x.label == y.label)
        total += std::conj(x.amplitude) * y.amplitude * packet_overlap(x.packet, y.packet);
  return total.real();
}

double BranchState::path_norm_squared() const {
  double total = 0.0;
  for (const auto& b : branches) total += std::norm(b.amplitude);
  return total;
}

QuadratureGrid BranchState::default_grid(std::size_t intervals) const {
  std::vector<PacketParams> packets;
  for (const auto& b : branches) {
    packets.push_back(b.packet);
    packets.push_back(b.packet.mirrored());
  }
  if (packets.empty()) return QuadratureGrid{};
  return whichway::default_grid(packets, intervals);
}

namespace {

std::vector<PacketParams> packets_of(const BranchState& state) {
  std::vector<PacketParams> out;
  out.reserve(state.branches.size());
  for (const auto& b : state.branches) out.push_back(b.packet);
  return out;
}

}  // namespace

double BranchState::norm_squared_quadrature(const QuadratureGrid& grid) const {
  check_grid_covers(packets_of(*this), grid);
  return integrate(grid, [&](double x) { return project_position(*this, x).norm_squared; });
}

double BranchState::norm_squared_quadrature() const { return norm_squared_quadrature(default_grid()); }

void BranchState::validate() const {
  for (const auto& b : branches) {
    detail::require(basis_of(b.label.cavity) == basis,
                    "branch label " + to_string(b.label.cavity) + " is outside the state's basis");
    detail::require(std::isfinite(b.amplitude.real()) && std::isfinite(b.amplitude.imag()),
                    "branch amplitude must be finite");
    b.packet.validate();
  }
}

DetectorDensity::DetectorDensity(const Matrix& m, double tolerance) : m_(m) {
  for (const auto& row : m_)
    for (const auto& v : row)
      detail::require(std::isfinite(v.real()) && std::isfinite(v.imag()),
                      "density matrix entries must be finite");
  std::ostringstream msg;
  if (hermiticity_error() > tolerance) {
    msg << "density matrix not Hermitian (error " << hermiticity_error() << ")";
    detail::fail(msg.str());
  }
  if (std::abs(trace() - 1.0) > tolerance) {
    msg << "density matrix trace " << trace() << " differs from 1";
    detail::fail(msg.str());
  }
  if (eigenvalues()[0] < -tolerance) {
    msg << "density matrix has negative eigenvalue " << eigenvalues()[0];
    detail::fail(msg.str());
  }
}

DetectorDensity DetectorDensity::pure(Complex a0, Complex a1) {
  const double n = std::norm(a0) + std::norm(a1);
  detail::require(n > 0.0 && std::isfinite(n), "pure state vector must be nonzero and finite");
  Matrix m{};
  m[0][0] = std::norm(a0) / n;
  m[1][1] = std::norm(a1) / n;
  m[0][1] = a0 * std::conj(a1) / n;
  m[1][0] = std::conj(m[0][1]);
  return DetectorDensity(m);
}

double DetectorDensity::trace() const { return m_[0][0].real() + m_[1][1].real(); }

double DetectorDensity::purity() const {
  double p = 0.0;
  for (const auto& row : m_)
    for (const auto& v : row) p += std::norm(v);
  return p;
}

std::array<double, 2> DetectorDensity::eigenvalues() const {
  const double a = m_[0][0].real();
  const double d = m_[1][1].real();
  const double gap = std::hypot(a - d, 2.0 * std::abs(m_[0][1]));
  return {0.5 * (a + d - gap), 0.5 * (a + d + gap)};
}

double DetectorDensity::hermiticity_error() const {
  return std::max({std::abs(m_[0][0].imag()), std::abs(m_[1][1].imag()),
                   std::abs(m_[0][1] - std::conj(m_[1][0]))});
}

namespace {

void require_detector_state(const BranchState& state) {
  state.validate();
  detail::require(state.basis == Basis::two_mode,
                  "reduce_to_detector needs the two-mode which-way basis");
  detail::require(std::abs(state.norm_squared() - 1.0) <= 1e-9, "reduce_to_detector needs a normalized state");
}

}  // namespace

DetectorDensity reduce_to_detector(const BranchState& state) {
  require_detector_state(state);
  DetectorDensity::Matrix m{};
  for (const auto& a : state.branches) {
    for (const auto& b : state.branches) {
      if (a.label.atom != b.label.atom) continue;
      const auto i = basis_index(a.label.cavity);
      const auto j = basis_index(b.label.cavity);
      m[i][j] += a.amplitude * std::conj(b.amplitude) * packet_overlap(b.packet, a.packet);
    }
  }
  return DetectorDensity(m);
}

DetectorDensity reduce_to_detector_quadrature(const BranchState& state, const QuadratureGrid& grid) {
  require_detector_state(state);
  check_grid_covers(packets_of(state), grid);
  DetectorDensity::Matrix m{};
  for (const auto& a : state.branches) {
    for (const auto& b : state.branches) {
      if (a.label.atom != b.label.atom) continue;
      const auto i = basis_index(a.label.cavity);
      const auto j = basis_index(b.label.cavity);
      m[i][j] += a.amplitude * std::conj(b.amplitude) * integrate(grid, [&](double x) {
                   return std::exp(log_evaluate(a.packet, x) + std::conj(log_evaluate(b.packet, x)));
                 });
    }
  }
  return DetectorDensity(m, 1e-10);
}

DetectorDensity reduce_to_detector_quadrature(const BranchState& state) {
  return reduce_to_detector_quadrature(state, state.default_grid());
}

BranchState make_which_way_state(double lambda_plus, double lambda_minus, double phi, double d,
                                double k, double s) {
  detail::require(std::isfinite(lambda_plus) && std::isfinite(lambda_minus) && std::isfinite(phi),
                  "path amplitudes and phase must be finite");
  detail::require(std::abs(lambda_plus * lambda_plus + lambda_minus * lambda_minus - 1.0) <= 1e-12,
                  "path amplitudes must satisfy lambda_+^2 + lambda_-^2 = 1");
  const PacketParams plus{d, k, s, Slit::plus};
  plus.validate();

  BranchState state;
  state.basis = Basis::two_mode;
  state.phi = phi;
  state.lambda_plus = lambda_plus;
  state.lambda_minus = lambda_minus;
  if (lambda_plus != 0.0)
    state.branches.push_back({{Cavity::one_plus_zero_minus, Atom::g}, Complex{lambda_plus}, plus});
  if (lambda_minus != 0.0)
    state.branches.push_back({{Cavity::zero_plus_one_minus, Atom::g},
                              lambda_minus * std::polar(1.0, phi), plus.mirrored()});
  return state;
}

std::vector<std::pair<BranchLabel, Complex>> PositionProjection::amplitudes() const {
  auto out = scaled;
  const double scale = std::exp(log_scale);
  for (auto& [label, amp] : out) amp *= scale;
  return out;
}

Complex PositionProjection::scaled_amplitude(BranchLabel label) const {
  for (const auto& [l, amp] : scaled)
    if (l == label) return amp;
  return {};
}

bool PositionProjection::degenerate() const {
  double total = 0.0;
  for (const auto& [label, amp] : scaled) total += std::norm(amp);
  return !(total > 0.0) || !std::isfinite(log_scale);
}

DetectorDensity PositionProjection::posterior() const {
  detail::require(!degenerate(), "posterior undefined: projected state vanishes");
  DetectorDensity::Matrix m{};
  double total = 0.0;
  for (const auto& [la, a] : scaled) {
    total += std::norm(a);
    for (const auto& [lb, b] : scaled) {
      if (la.atom != lb.atom) continue;
      m[basis_index(la.cavity)][basis_index(lb.cavity)] += a * std::conj(b);
    }
  }
  for (auto& row : m)
    for (auto& v : row) v /= total;
  return DetectorDensity(m);
}

PositionProjection project_position(const BranchState& state, double x) {
  detail::require(std::isfinite(x), "position must be finite");
  PositionProjection out;
  out.basis = state.basis;
  out.x = x;

  std::vector<std::pair<BranchLabel, Complex>> logs;
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& b : state.branches) {
    if (b.amplitude == Complex{}) continue;
    const Complex term = std::log(b.amplitude) + log_evaluate(b.packet, x);
    logs.emplace_back(b.label, term);
    shift = std::max(shift, term.real());
  }
  out.log_scale = shift;
  if (logs.empty()) return out;

  for (const auto& [label, term] : logs) {
    const Complex value = std::exp(term - shift);
    auto it = std::find_if(out.scaled.begin(), out.scaled.end(),
                           [&](const auto& e) { return e.first == label; });
    if (it == out.scaled.end())
      out.scaled.emplace_back(label, value);
    else
      it->second += value;
  }
  double total = 0.0;
  for (const auto& [label, amp] : out.scaled) total += std::norm(amp);
  out.norm_squared = total * std::exp(2.0 * shift);
  return out;
}

}  // namespace whichway
