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

#include "verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "whichway/complementarity.hpp"
#include "whichway/eraser.hpp"
#include "whichway/random.hpp"
#include "whichway/wavepacket.hpp"

namespace whichway::cli {

namespace {

struct Draw {
  double lambda_plus;
  double lambda_minus;
  double phi;
  double d;
  double k;
  double s;
  double x;

  std::string describe() const {
    std::ostringstream out;
    out.precision(17);
    out << "lambda_plus=" << lambda_plus << " lambda_minus=" << lambda_minus << " phi=" << phi
        << " d_over_b=" << d << " k_b=" << k << " t_over_tau=" << s << " x_over_b=" << x;
    return out.str();
  }
};

class DrawSource {
 public:
  explicit DrawSource(std::uint64_t seed) : rng_(seed) {}

  Draw next() {
    const double angle = 0.5 * std::numbers::pi * u();
    return Draw{std::cos(angle), std::sin(angle), 2.0 * std::numbers::pi * u(), 8.0 * u(),
                -2.0 + 4.0 * u(), 3.0 * u(), -8.0 + 16.0 * u()};
  }

 private:
  double u() { return rng_.uniform(counter_++); }

  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

class Check {
 public:
  Check(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  void record(double residual, const std::string& where) {
    ++result_.cases;
    if (!(residual <= result_.max_residual)) {
      // NaN residuals count as failures.
      result_.max_residual = std::isnan(residual) ? INFINITY : residual;
      result_.worst_case = where;
    }
  }

  CheckResult result() const { return result_; }

 private:
  CheckResult result_;
};

}  // namespace

std::vector<CheckResult> run_invariant_suite(const VerifyConfig& config, const VerifyOptions& options) {
  std::vector<CheckResult> out;
  const double balanced = std::numbers::sqrt2 / 2.0;

  {
    Check identity("complementarity identity P^2+V^2+2S=1", 1e-12);
    Check dist("distinguishability D^2+V^2=1", 1e-12);
    Check entropy("linear entropy closed form vs 1-Tr(rho^2)", 1e-12);
    Check conditioned_identity("conditioned identity V_x^2+K_x^2=1", 1e-12);
    Check closed_balanced("balanced conditioned pair = (sech delta, |tanh delta|)", 1e-12);
    Check phi_free("V_x, K_x independent of phi", 1e-12);
    Check bayes("K_x = |p(+|x) - p(-|x)| by Bayes' rule", 1e-9);
    DrawSource src(config.seed);
    for (std::size_t i = 0; i < config.draws; ++i) {
      const Draw w = src.next();
      const auto set = full_set(w.lambda_plus, w.lambda_minus, w.phi, w.d);
      identity.record(set.residual_identity, w.describe());
      dist.record(set.residual_distinguishability, w.describe());
      const auto rho = reduce_to_detector(make_which_way_state(w.lambda_plus, w.lambda_minus, w.phi, w.d, 0.0, 0.0));
      entropy.record(std::abs(linear_entropy(rho) - set.S), w.describe());

      const auto c = conditioned(w.lambda_plus, w.lambda_minus, w.phi, w.d, w.k, w.s, w.x);
      conditioned_identity.record(std::abs(c.V_x * c.V_x + c.K_x * c.K_x - 1.0), w.describe());
      const auto c0 = conditioned(w.lambda_plus, w.lambda_minus, 0.0, w.d, w.k, w.s, w.x);
      phi_free.record(std::max(std::abs(c.V_x - c0.V_x), std::abs(c.K_x - c0.K_x)), w.describe());

      const auto b = conditioned_pair(balanced, balanced, w.d, w.k, w.s, w.x);
      const double dl = delta(w.d, w.k, w.s, w.x);
      closed_balanced.record(
          std::max(std::abs(b.visibility - 1.0 / std::cosh(dl)), std::abs(b.knowledge - std::abs(std::tanh(dl)))),
          w.describe());

      const PacketParams plus{w.d, w.k, w.s, Slit::plus};
      const double wp = w.lambda_plus * w.lambda_plus * density(plus, w.x);
      const double wm = w.lambda_minus * w.lambda_minus * density(plus.mirrored(), w.x);
      if (wp + wm > 1e-250) bayes.record(std::abs(c.K_x - std::abs(wp - wm) / (wp + wm)), w.describe());
    }
    for (const auto* ch : {&identity, &dist, &entropy, &conditioned_identity, &closed_balanced, &phi_free, &bayes})
      out.push_back(ch->result());
  }

  {
    Check route("conditioned pair: closed form vs position projection", 1e-9);
    DrawSource src(config.seed ^ 0x5151);
    for (std::size_t i = 0; i < config.projection_draws; ++i) {
      const Draw w = src.next();
      const auto projected = conditioned_pair(w.lambda_plus, w.lambda_minus, w.d, w.k, w.s, w.x);
      const double x = options.inject_fault ? 2.0 * eraser_locus(w.d, w.k, w.s) - w.x : w.x;
      const auto closed = conditioned_pair_closed_form(w.lambda_plus, w.lambda_minus, w.d, w.k, w.s, x);
      route.record(std::max(std::abs(projected.visibility - closed.visibility),
                            std::abs(projected.knowledge - closed.knowledge)),
                   w.describe());
    }
    out.push_back(route.result());
  }

  {
    Check reduce("reduced density: closed form vs quadrature partial trace", 1e-8);
    Check norm("packet normalization by quadrature", 1e-9);
    DrawSource src(config.seed ^ 0xA5A5);
    for (std::size_t i = 0; i < config.oracle_draws; ++i) {
      const Draw w = src.next();
      const auto state = make_which_way_state(w.lambda_plus, w.lambda_minus, w.phi, w.d, w.k, w.s);
      const auto a = reduce_to_detector(state);
      const auto q = reduce_to_detector_quadrature(state);
      double worst = 0.0;
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) worst = std::max(worst, std::abs(a(r, c) - q(r, c)));
      reduce.record(worst, w.describe());
      const PacketParams p{w.d, w.k, w.s, Slit::plus};
      norm.record(std::abs(overlap_quadrature(p, p) - 1.0), w.describe());
    }
    out.push_back(reduce.result());
    out.push_back(norm.result());
  }

  {
    Check overlap("overlap modulus invariant under free evolution", 1e-9);
    for (double d : {0.0, 1.0, 2.5, 4.0, 6.0})
      for (double k : {-1.5, 0.0, 1.0})
        for (double s : {0.0, 0.5, 1.0, 2.0, 5.0}) {
          const PacketParams p{d, k, s, Slit::plus};
          std::ostringstream where;
          where << "d_over_b=" << d << " k_b=" << k << " t_over_tau=" << s;
          overlap.record(std::abs(std::abs(overlap_quadrature(p, p.mirrored())) - overlap_analytic(d)), where.str());
        }
    out.push_back(overlap.result());
  }
  return out;
}

}  // namespace whichway::cli
