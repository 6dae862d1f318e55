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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "test_util.hpp"
#include "whichway/error.hpp"

using namespace whichway;
using whichway::testing::kBalanced;

namespace {

constexpr double r = std::numbers::sqrt2 / 2.0;

using Term = std::tuple<Slit, Cavity, Atom, double>;

std::vector<Term> terms(const BranchState& st) {
  std::vector<Term> out;
  for (const auto& b : st.branches) {
    EXPECT_EQ(b.amplitude.imag(), 0.0);
    out.emplace_back(b.packet.slit, b.label.cavity, b.label.atom, b.amplitude.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Term> sorted(std::vector<Term> t) {
  std::sort(t.begin(), t.end());
  return t;
}

ModeState scaled_plus_click(const BranchState& post, double x, double factor) {
  BranchState scaled = post;
  for (auto& b : scaled.branches)
    if (b.packet.slit == Slit::plus) b.amplitude *= factor;
  return click_state(scaled, x).mode;
}

double mode_gap(const ModeState& a, const ModeState& b) {
  return std::max(std::abs(a.v[0] - b.v[0]), std::abs(a.v[1] - b.v[1]));
}

}  // namespace

TEST(WaveParticle, NamedStates) {
  EXPECT_EQ(wave_state().v[0], Complex(r));
  EXPECT_EQ(wave_state().v[1], Complex(-r));
  EXPECT_EQ(particle_state().v[0], Complex(1.0));
  const auto wp = wave_particle_superposition();
  EXPECT_NEAR(wp.norm(), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(wave_state(), particle_state()), 0.5, 1e-15);
}

TEST(WaveParticle, PiHalfPulse) {
  const Branch b{{Cavity::zero_plus, Atom::e}, Complex{1.0}, PacketParams{4.0, 0.0, 1.0, Slit::plus}};
  const auto out = apply_pi_half(b);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].label, (BranchLabel{Cavity::zero_plus, Atom::e}));
  EXPECT_EQ(out[1].label, (BranchLabel{Cavity::one_plus, Atom::g}));
  EXPECT_EQ(out[0].amplitude, Complex(r));
  EXPECT_EQ(out[1].amplitude, Complex(r));
  EXPECT_NEAR(std::norm(out[0].amplitude) + std::norm(out[1].amplitude), 1.0, 1e-15);

  Branch minus = b;
  minus.packet.slit = Slit::minus;
  EXPECT_THROW(apply_pi_half(minus), InvalidArgument);
  Branch ground = b;
  ground.label.atom = Atom::g;
  EXPECT_THROW(apply_pi_half(ground), InvalidArgument);
}

TEST(WaveParticle, PaperConventionReproducesGlobalState) {
  const auto st = make_single_cavity_state(1.0, 1.0, 0.0, 4.0, 0.0, 1.0);
  const auto ramsey = apply_ramsey(apply_pi_half(st), Convention::paper);
  EXPECT_FALSE(ramsey.normalized);
  const auto expected = sorted({
      {Slit::plus, Cavity::zero_plus, Atom::e, r},
      {Slit::plus, Cavity::zero_plus, Atom::g, r},
      {Slit::plus, Cavity::one_plus, Atom::g, r},
      {Slit::plus, Cavity::one_plus, Atom::e, -r},
      {Slit::minus, Cavity::zero_plus, Atom::e, 1.0},
  });
  EXPECT_EQ(terms(ramsey), expected);
}

TEST(WaveParticle, PaperConventionReproducesPostselectedState) {
  const auto st = make_single_cavity_state(1.0, 1.0, 0.0, 4.0, 0.0, 1.0);
  const auto post = postselect_excited(apply_ramsey(apply_pi_half(st), Convention::paper));
  const auto expected = sorted({
      {Slit::plus, Cavity::zero_plus, Atom::e, r},
      {Slit::plus, Cavity::one_plus, Atom::e, -r},
      {Slit::minus, Cavity::zero_plus, Atom::e, 1.0},
  });
  EXPECT_EQ(terms(post.state), expected);
}

TEST(WaveParticle, UnitaryRamseyOnExcitedBranch) {
  BranchState st;
  st.basis = Basis::single_mode;
  st.branches.push_back({{Cavity::zero_plus, Atom::e}, Complex{0.6, 0.8}, PacketParams{}});
  const auto out = apply_ramsey(st, Convention::unitary);
  ASSERT_EQ(out.branches.size(), 2u);
  EXPECT_EQ(out.branches[0].amplitude, Complex(0.6, 0.8) * r);
  EXPECT_EQ(out.branches[1].amplitude, Complex(0.6, 0.8) * r);
  EXPECT_NEAR(out.path_norm_squared(), 1.0, 1e-15);
}

TEST(WaveParticle, OrthogonalLimitProbabilityByEnumeration) {
  // Enumerate the branches by hand: slit + carries lambda_+ through the pulse
  // (1/sqrt2 on |0+,e>, |1+,g>) and the unitary Ramsey map; slit - stays in |0+,e>.
  const double lp = kBalanced, lm = kBalanced;
  const double e_weight = std::pow(lp * r * r, 2)      // |0+,e> -> e
                          + std::pow(-lp * r * r, 2)   // |1+,g> -> e
                          + lm * lm;                   // slit - untouched
  EXPECT_NEAR(e_weight, 0.75, 1e-15);

  ProtocolConfig cfg;
  cfg.d = 40.0;
  cfg.convention = Convention::unitary;
  const auto stages = run_protocol(cfg);
  EXPECT_NEAR(stages.excited.probability, e_weight, 1e-15);
  EXPECT_NEAR(stages.excited.path_probability, e_weight, 1e-15);
  EXPECT_NEAR(postselect_ground(stages.after_ramsey).probability + stages.excited.probability, 1.0, 1e-15);
}

TEST(WaveParticle, CompletenessOverlappingPackets) {
  whichway::testing::ParamSource src(51);
  for (int i = 0; i < 100; ++i) {
    const auto w = src.next();
    ProtocolConfig cfg;
    cfg.lambda_plus = w.lambda_plus;
    cfg.lambda_minus = w.lambda_minus;
    cfg.phi = w.phi;
    cfg.d = w.d;
    cfg.k = w.k;
    cfg.s = w.s;
    cfg.convention = Convention::unitary;
    const auto stages = run_protocol(cfg);
    const auto g = postselect_ground(stages.after_ramsey);
    ASSERT_NEAR(g.probability + stages.excited.probability, 1.0, 1e-12);
    ASSERT_NEAR(g.path_probability + stages.excited.path_probability, 1.0, 1e-12);
  }
}

TEST(WaveParticle, UnitaryPathNormConservedAtEveryStage) {
  whichway::testing::ParamSource src(52);
  for (int i = 0; i < 100; ++i) {
    const auto w = src.next();
    const auto initial = make_single_cavity_state(w.lambda_plus, w.lambda_minus, w.phi, w.d, w.k, w.s);
    const auto pulse = apply_pi_half(initial);
    const auto ramsey = apply_ramsey(pulse, Convention::unitary);
    ASSERT_NEAR(initial.path_norm_squared(), 1.0, 1e-12);
    ASSERT_NEAR(pulse.path_norm_squared(), 1.0, 1e-12);
    ASSERT_NEAR(ramsey.path_norm_squared(), 1.0, 1e-12);
  }
}

TEST(WaveParticle, UnitaryQuadratureNormConservedWhenPacketsSeparate) {
  ProtocolConfig cfg;
  cfg.d = 10.0;
  cfg.convention = Convention::unitary;
  const auto stages = run_protocol(cfg);
  const double n0 = stages.initial.norm_squared_quadrature();
  EXPECT_NEAR(stages.after_pulse.norm_squared_quadrature(), n0, 1e-9);
  EXPECT_NEAR(stages.after_ramsey.norm_squared_quadrature(), n0, 1e-9);
  EXPECT_NEAR(n0, 1.0, 1e-9);
}

TEST(WaveParticle, CenterClickIsWavePlusParticle) {
  const double norm = std::sqrt(2.0 + std::numbers::sqrt2);
  const ModeState expected{{Complex{(1.0 + r) / norm}, Complex{-r / norm}}, true};
  EXPECT_NEAR(expected.v[0].real(), 0.92387953251128675613, 1e-15);
  EXPECT_NEAR(expected.v[1].real(), -0.38268343236508977173, 1e-15);
  for (double s : {0.0, 0.5, 1.0, 3.0}) {
    const auto stages = run_protocol(ProtocolConfig{kBalanced, kBalanced, 0.0, 4.0, 0.0, s});
    const auto click = click_state(stages.excited.state, 0.0);
    ASSERT_FALSE(click.degenerate);
    // Both packets carry the same phase at x = 0, so compare after removing it.
    const Complex phase = std::polar(1.0, -std::arg(click.mode.v[0]));
    ModeState aligned{{click.mode.v[0] * phase, click.mode.v[1] * phase}, true};
    EXPECT_LT(mode_gap(aligned, expected), 1e-12) << "s=" << s;
    EXPECT_NEAR(fidelity(wave_particle_superposition(), click.mode), 1.0, 1e-12);
  }
}

TEST(WaveParticle, CenterClickVisibilityMatchesBruteForce) {
  const auto stages = run_protocol(ProtocolConfig{});
  const auto click = click_state(stages.excited.state, 0.0);
  // Brute force: both packet amplitudes at x = 0 into the 2-vector directly.
  const Complex ap = evaluate(PacketParams{4.0, 0.0, 1.0, Slit::plus}, 0.0) * kBalanced;
  const Complex am = evaluate(PacketParams{4.0, 0.0, 1.0, Slit::minus}, 0.0) * kBalanced;
  const ModeState brute = ModeState{{ap * r + am, -ap * r}, false}.normalized_copy();
  const double v_click = 2.0 * std::abs(click.mode.v[0] * std::conj(click.mode.v[1]));
  const double v_brute = 2.0 * std::abs(brute.v[0] * std::conj(brute.v[1]));
  EXPECT_NEAR(v_click, v_brute, 1e-12);
  EXPECT_NEAR(v_click, 2.0 * 0.92387953251128675613 * 0.38268343236508977173, 1e-12);
}

TEST(WaveParticle, ConventionsDifferOnlyInPlusBranchWeight) {
  whichway::testing::ParamSource src(53);
  for (int i = 0; i < 200; ++i) {
    const auto w = src.next();
    ProtocolConfig cfg{w.lambda_plus, w.lambda_minus, w.phi, w.d, w.k, w.s};
    cfg.convention = Convention::paper;
    const auto paper = run_protocol(cfg).excited.state;
    cfg.convention = Convention::unitary;
    const auto unitary = run_protocol(cfg).excited.state;
    const auto u = click_state(unitary, w.x);
    if (u.degenerate) continue;
    ASSERT_LT(mode_gap(u.mode, scaled_plus_click(paper, w.x, r)), 1e-12) << "draw " << i;
  }
}

TEST(WaveParticle, ConventionsAgreeWhereOnePacketDominates) {
  for (double x : {-12.0, 12.0}) {
    ProtocolConfig cfg;
    cfg.d = 16.0;
    cfg.convention = Convention::paper;
    const auto paper = click_state(run_protocol(cfg).excited.state, x);
    cfg.convention = Convention::unitary;
    const auto unitary = click_state(run_protocol(cfg).excited.state, x);
    EXPECT_LT(1.0 - fidelity(paper.mode, unitary.mode), 1e-12) << x;
  }
}

TEST(WaveParticle, TailBoundsOnPacketCenters) {
  // The stray packet's relative amplitude at the other center is
  // exp(-D^2 / 2B^2), so the fixed bound holds while B^2 <= 4.
  for (double d : {2.0, 3.0, 4.0, 6.0, 8.0}) {
    for (double s : {0.0, 1.0, 1.5}) {
      const auto post = run_protocol(ProtocolConfig{kBalanced, kBalanced, 0.0, d, 0.0, s}).excited.state;
      const double bound = 1.0 - 2.0 * std::exp(-d * d / 4.0);
      EXPECT_GE(fidelity(wave_state(), click_state(post, d / 2.0).mode), bound) << d << " " << s;
      EXPECT_GE(fidelity(particle_state(), click_state(post, -d / 2.0).mode), bound) << d << " " << s;
    }
  }
}

TEST(WaveParticle, TailBoundsAtLateTimes) {
  for (double d : {2.0, 4.0, 8.0}) {
    for (double s : {2.0, 3.0, 5.0}) {
      const auto post = run_protocol(ProtocolConfig{kBalanced, kBalanced, 0.0, d, 0.0, s}).excited.state;
      const double B2 = 1.0 + s * s;
      const double bound = 1.0 - 2.0 * std::exp(-d * d / B2);
      EXPECT_GE(fidelity(wave_state(), click_state(post, d / 2.0).mode), bound) << d << " " << s;
      EXPECT_GE(fidelity(particle_state(), click_state(post, -d / 2.0).mode), bound) << d << " " << s;
    }
  }
}

TEST(WaveParticle, LimitsAreMonotoneInSeparation) {
  double prev_w = 0.0, prev_p = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double d = 2.0 + 0.25 * i;
    const auto post = run_protocol(ProtocolConfig{kBalanced, kBalanced, 0.0, d, 0.0, 1.0}).excited.state;
    const double fw = fidelity(wave_state(), click_state(post, d / 2.0).mode);
    const double fp = fidelity(particle_state(), click_state(post, -d / 2.0).mode);
    // Ties at saturation differ by rounding only.
    ASSERT_GE(fw, prev_w - 1e-15) << d;
    ASSERT_GE(fp, prev_p - 1e-15) << d;
    prev_w = fw;
    prev_p = fp;
  }
  EXPECT_NEAR(prev_w, 1.0, 1e-12);
  EXPECT_NEAR(prev_p, 1.0, 1e-12);
}

TEST(WaveParticle, DetectorReportsAtDefaults) {
  const auto reports = detector_reports(ProtocolConfig{});
  EXPECT_EQ(reports[0].detector, Detector::D1);
  EXPECT_GT(reports[0].fidelity_wave, 0.99);
  EXPECT_GT(reports[2].fidelity_particle, 0.99);
  EXPECT_NEAR(reports[1].center_fidelity_superposition, 1.0, 1e-12);
  double total = 0.0;
  for (const auto& rep : reports) {
    ASSERT_TRUE(rep.mean_state.has_value());
    total += rep.probability;
  }
  EXPECT_GT(total, 0.99);
  EXPECT_LE(total, 1.0 + 1e-12);
}

TEST(WaveParticle, ClassifyClick) {
  const DetectorRegions regions;
  EXPECT_EQ(classify_click(0.0, regions), Detector::D2);
  EXPECT_EQ(classify_click(3.0, regions), Detector::D1);
  EXPECT_EQ(classify_click(-3.0, regions), Detector::D3);
  EXPECT_EQ(classify_click(7.0, regions), Detector::none);
  EXPECT_EQ(classify_click(1.0, regions), Detector::D1);
  EXPECT_EQ(classify_click(-1.0, regions), Detector::D2);
  EXPECT_EQ(classify_click(5.0, regions), Detector::none);

  DetectorRegions overlapping;
  overlapping.d2 = Region{-1.0, 1.5};
  EXPECT_THROW(classify_click(0.0, overlapping), InvalidArgument);
}

TEST(WaveParticle, DegenerateClickIsFlagged) {
  const auto post = run_protocol(ProtocolConfig{}).excited.state;
  const auto click = click_state(post, 60.0);
  EXPECT_TRUE(click.degenerate);
  EXPECT_LT(click.density, kDegenerateDensity);
}

TEST(WaveParticle, ClickStateRejectsUnselectedState) {
  const auto stages = run_protocol(ProtocolConfig{});
  EXPECT_THROW(click_state(stages.after_ramsey, 0.0), InvalidArgument);
}
