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

#include "whichway/waveparticle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "whichway/error.hpp"

namespace whichway {

std::string to_string(Convention c) { return c == Convention::paper ? "paper" : "unitary"; }

std::string to_string(Detector d) {
  switch (d) {
    case Detector::D1: return "D1";
    case Detector::D2: return "D2";
    case Detector::D3: return "D3";
    case Detector::none: return "none";
  }
  return "?";
}

void DetectorRegions::validate() const {
  const std::array<const Region*, 3> all{&d1, &d2, &d3};
  for (const auto* r : all)
    detail::require(std::isfinite(r->lo) && std::isfinite(r->hi) && r->lo < r->hi,
                    "detector region needs finite lo < hi");
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      detail::require(all[i]->hi <= all[j]->lo || all[j]->hi <= all[i]->lo,
                      "detector regions overlap");
}

const Region& DetectorRegions::operator[](Detector d) const {
  switch (d) {
    case Detector::D1: return d1;
    case Detector::D2: return d2;
    case Detector::D3: return d3;
    default: detail::fail("no region for detector 'none'");
  }
}

void ProtocolConfig::validate() const {
  detail::require(std::isfinite(lambda_plus) && std::isfinite(lambda_minus) && std::isfinite(phi),
                  "path amplitudes and phase must be finite");
  detail::require(std::abs(lambda_plus * lambda_plus + lambda_minus * lambda_minus - 1.0) <= 1e-12,
                  "path amplitudes must satisfy lambda_+^2 + lambda_-^2 = 1");
  PacketParams{d, k, s, Slit::plus}.validate();
  detail::require(convention == Convention::paper || convention == Convention::unitary,
                  "unknown convention");
  regions.validate();
}

double ModeState::norm() const { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

ModeState ModeState::normalized_copy() const {
  const double n = norm();
  detail::require(n > 0.0 && std::isfinite(n), "cannot normalize a vanishing mode state");
  return ModeState{{v[0] / n, v[1] / n}, true};
}

ModeState wave_state() {
  return ModeState{{Complex{std::numbers::sqrt2 / 2.0}, Complex{-std::numbers::sqrt2 / 2.0}}, true};
}

ModeState particle_state() { return ModeState{{Complex{1.0}, Complex{0.0}}, true}; }

ModeState wave_particle_superposition() {
  const auto w = wave_state();
  const auto p = particle_state();
  return ModeState{{w.v[0] + p.v[0], w.v[1] + p.v[1]}, false}.normalized_copy();
}

double fidelity(const ModeState& a, const ModeState& b) {
  const auto na = a.normalized_copy();
  const auto nb = b.normalized_copy();
  return std::norm(std::conj(na.v[0]) * nb.v[0] + std::conj(na.v[1]) * nb.v[1]);
}

double fidelity(const ModeState& a, const DetectorDensity& rho) {
  const auto n = a.normalized_copy();
  Complex f{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) f += std::conj(n.v[i]) * rho(i, j) * n.v[j];
  return f.real();
}

BranchState make_single_cavity_state(double lambda_plus, double lambda_minus, double phi, double d,
                                double k, double s) {
  detail::require(std::isfinite(lambda_plus) && std::isfinite(lambda_minus) && std::isfinite(phi),
                  "path amplitudes and phase must be finite");
  const PacketParams plus{d, k, s, Slit::plus};
  plus.validate();
  BranchState state;
  state.basis = Basis::single_mode;
  state.phi = phi;
  state.lambda_plus = lambda_plus;
  state.lambda_minus = lambda_minus;
  if (lambda_plus != 0.0)
    state.branches.push_back({{Cavity::zero_plus, Atom::e}, Complex{lambda_plus}, plus});
  if (lambda_minus != 0.0)
    state.branches.push_back(
        {{Cavity::zero_plus, Atom::e}, lambda_minus * std::polar(1.0, phi), plus.mirrored()});
  state.normalized = std::abs(state.path_norm_squared() - 1.0) <= 1e-12;
  return state;
}

std::vector<Branch> apply_pi_half(const Branch& branch) {
  detail::require(branch.packet.slit == Slit::plus,
                  "pi/2 pulse acts only on the slit-+ branch (slit - meets no field)");
  detail::require(branch.label == BranchLabel{Cavity::zero_plus, Atom::e},
                  "pi/2 pulse expects the branch in |0+>|e>");
  const Complex half = branch.amplitude * (std::numbers::sqrt2 / 2.0);
  return {
      Branch{{Cavity::zero_plus, Atom::e}, half, branch.packet},
      Branch{{Cavity::one_plus, Atom::g}, half, branch.packet},
  };
}

BranchState apply_pi_half(const BranchState& state) {
  state.validate();
  detail::require(state.basis == Basis::single_mode, "pi/2 pulse needs the single-mode basis");
  BranchState out = state;
  out.branches.clear();
  for (const auto& b : state.branches) {
    if (b.packet.slit == Slit::plus) {
      for (auto& produced : apply_pi_half(b)) out.branches.push_back(produced);
    } else {
      out.branches.push_back(b);
    }
  }
  return out;
}

BranchState apply_ramsey(const BranchState& state, Convention convention) {
  state.validate();
  const double f = convention == Convention::unitary ? std::numbers::sqrt2 / 2.0 : 1.0;
  BranchState out = state;
  out.branches.clear();
  for (const auto& b : state.branches) {
    if (b.packet.slit != Slit::plus) {
      out.branches.push_back(b);
      continue;
    }
    const Complex a = b.amplitude * f;
    const Cavity c = b.label.cavity;
    if (b.label.atom == Atom::g) {
      out.branches.push_back({{c, Atom::g}, a, b.packet});
      out.branches.push_back({{c, Atom::e}, -a, b.packet});
    } else {
      out.branches.push_back({{c, Atom::g}, a, b.packet});
      out.branches.push_back({{c, Atom::e}, a, b.packet});
    }
  }
  if (convention == Convention::paper) out.normalized = false;
  return out;
}

namespace {

PostSelection postselect(const BranchState& state, Atom keep) {
  state.validate();
  PostSelection out{state, 0.0, 0.0};
  out.state.branches.clear();
  for (const auto& b : state.branches)
    if (b.label.atom == keep) out.state.branches.push_back(b);
  out.state.normalized = false;
  const double whole = state.norm_squared();
  const double whole_path = state.path_norm_squared();
  out.probability = whole > 0.0 ? out.state.norm_squared() / whole : 0.0;
  out.path_probability = whole_path > 0.0 ? out.state.path_norm_squared() / whole_path : 0.0;
  return out;
}

}  // namespace

PostSelection postselect_excited(const BranchState& state) { return postselect(state, Atom::e); }
PostSelection postselect_ground(const BranchState& state) { return postselect(state, Atom::g); }

ProtocolStages run_protocol(const ProtocolConfig& config) {
  config.validate();
  ProtocolStages out{};
  out.initial = make_single_cavity_state(config.lambda_plus, config.lambda_minus, config.phi, config.d,
                                    config.k, config.s);
  out.after_pulse = apply_pi_half(out.initial);
  out.after_ramsey = apply_ramsey(out.after_pulse, config.convention);
  out.excited = postselect_excited(out.after_ramsey);
  return out;
}

Click click_state(const BranchState& postselected, double x) {
  for (const auto& b : postselected.branches)
    detail::require(b.label.atom == Atom::e, "click_state expects a state post-selected on |e>");
  detail::require(postselected.basis == Basis::single_mode, "click_state needs the single-mode basis");
  const auto projection = project_position(postselected, x);
  Click out;
  out.density = projection.norm_squared;
  for (const auto& [label, amp] : projection.scaled) out.mode.v[basis_index(label.cavity)] += amp;
  if (!(out.density >= kDegenerateDensity) || out.mode.norm() == 0.0) {
    out.degenerate = true;
    const double scale = std::isfinite(projection.log_scale) ? std::exp(projection.log_scale) : 0.0;
    for (auto& c : out.mode.v) c *= scale;
    return out;
  }
  out.mode = out.mode.normalized_copy();
  return out;
}

Detector classify_click(double x, const DetectorRegions& regions) {
  regions.validate();
  for (Detector d : {Detector::D1, Detector::D2, Detector::D3})
    if (regions[d].contains(x)) return d;
  return Detector::none;
}

std::array<DetectorReport, 3> detector_reports(const ProtocolConfig& config,
                                               std::size_t intervals_per_region) {
  const auto stages = run_protocol(config);
  const auto& post = stages.excited.state;
  const double total = post.norm_squared();
  detail::require(total > 0.0, "post-selected state vanishes");

  const auto w = wave_state();
  const auto p = particle_state();
  const auto wp = wave_particle_superposition();

  std::array<DetectorReport, 3> out;
  const std::array<Detector, 3> ids{Detector::D1, Detector::D2, Detector::D3};
  for (std::size_t n = 0; n < ids.size(); ++n) {
    auto& rep = out[n];
    rep.detector = ids[n];
    rep.region = config.regions[ids[n]];
    const QuadratureGrid grid{rep.region.lo, rep.region.hi, intervals_per_region};

    // Accumulate the unnormalized outer product v v^dagger over the region.
    std::array<std::array<std::vector<Complex>, 2>, 2> samples;
    for (auto& row : samples)
      for (auto& col : row) col.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto projection = project_position(post, grid.node(i));
      std::array<Complex, 2> v{};
      for (const auto& [label, amp] : projection.scaled) v[basis_index(label.cavity)] += amp;
      const double scale = std::isfinite(projection.log_scale) ? std::exp(projection.log_scale) : 0.0;
      for (auto& c : v) c *= scale;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) samples[a][b][i] = v[a] * std::conj(v[b]);
    }
    DetectorDensity::Matrix m{};
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) m[a][b] = simpson(std::span<const Complex>(samples[a][b]), grid.step());
    const double weight = m[0][0].real() + m[1][1].real();
    rep.probability = weight / total;
    if (weight > 0.0) {
      for (auto& row : m)
        for (auto& c : row) c /= weight;
      m[1][0] = std::conj(m[0][1]);
      rep.mean_state = DetectorDensity(m, 1e-10);
      rep.fidelity_wave = fidelity(w, *rep.mean_state);
      rep.fidelity_particle = fidelity(p, *rep.mean_state);
      rep.fidelity_superposition = fidelity(wp, *rep.mean_state);
    }
    const auto center = click_state(post, 0.5 * (rep.region.lo + rep.region.hi));
    rep.center_state = center.mode;
    if (!center.degenerate) {
      rep.center_fidelity_wave = fidelity(w, center.mode);
      rep.center_fidelity_particle = fidelity(p, center.mode);
      rep.center_fidelity_superposition = fidelity(wp, center.mode);
    }
  }
  return out;
}

}  // namespace whichway
