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

#include "config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "whichway/error.hpp"

namespace whichway::cli {

using nlohmann::json;

namespace {

void expect_object(const json& j, const std::string& path) {
  detail::require(j.is_object(), "config: '" + path + "' must be an object");
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& path) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    detail::require(ok, "config: unknown key '" + (path.empty() ? key : path + "." + key) + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& path) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    detail::fail("config: '" + path + "." + key + "' has the wrong type");
  }
}

void read_number(const json& j, const char* key, double& out, const std::string& path) {
  if (!j.contains(key)) return;
  detail::require(j.at(key).is_number(), "config: '" + path + "." + key + "' must be a number");
  out = j.at(key).get<double>();
}

void read_count(const json& j, const char* key, std::size_t& out, const std::string& path) {
  if (!j.contains(key)) return;
  detail::require(j.at(key).is_number_unsigned(),
                  "config: '" + path + "." + key + "' must be a non-negative integer");
  out = j.at(key).get<std::size_t>();
}

void read_axis(const json& j, const char* key, AxisGrid& axis, const std::string& path) {
  if (!j.contains(key)) return;
  const std::string sub = path + "." + key;
  const auto& g = j.at(key);
  expect_object(g, sub);
  reject_unknown(g, {"min", "max", "points"}, sub);
  read_number(g, "min", axis.lo, sub);
  read_number(g, "max", axis.hi, sub);
  read_count(g, "points", axis.points, sub);
}

Convention parse_convention(const std::string& name) {
  if (name == "paper") return Convention::paper;
  if (name == "unitary") return Convention::unitary;
  detail::fail("config: convention must be 'paper' or 'unitary', got '" + name + "'");
}

Scenario parse_scenario(const std::string& name) {
  if (name == "which_way") return Scenario::which_way;
  if (name == "no_detector") return Scenario::no_detector;
  if (name == "postselected_excited") return Scenario::postselected_excited;
  detail::fail("config: unknown scenario '" + name + "'");
}

void read_figure(const json& j, const char* key, FigureParams& f, Figure which) {
  if (!j.contains(key)) return;
  const std::string path = key;
  const auto& o = j.at(key);
  expect_object(o, path);
  switch (which) {
    case Figure::position:
      reject_unknown(o, {"lambda_plus", "lambda_minus", "phi", "d_over_b", "k_b", "t_over_tau", "x_grid"}, path);
      break;
    case Figure::time:
      reject_unknown(o, {"lambda_plus", "lambda_minus", "phi", "d_over_b", "k_b", "x_over_b", "t_grid"}, path);
      break;
    case Figure::position_wavenumber:
      reject_unknown(o, {"lambda_plus", "lambda_minus", "phi", "d_over_b", "t_over_tau", "x_grid", "k_grid"},
                     path);
      break;
  }
  read_number(o, "lambda_plus", f.lambda_plus, path);
  read_number(o, "lambda_minus", f.lambda_minus, path);
  read_number(o, "phi", f.phi, path);
  read_number(o, "d_over_b", f.d, path);
  read_number(o, "k_b", f.k, path);
  read_number(o, "t_over_tau", f.s, path);
  read_number(o, "x_over_b", f.x, path);
  read_axis(o, "x_grid", f.x_axis, path);
  read_axis(o, "t_grid", f.s_axis, path);
  read_axis(o, "k_grid", f.k_axis, path);
}

void read_region(const json& j, const char* key, Region& r) {
  if (!j.contains(key)) return;
  const auto& a = j.at(key);
  detail::require(a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number(),
                  std::string("config: detectors.") + key + " must be [lo, hi]");
  r.lo = a[0].get<double>();
  r.hi = a[1].get<double>();
}

void require_lambdas(double lp, double lm, const std::string& where) {
  detail::require(std::isfinite(lp) && std::isfinite(lm) && std::abs(lp * lp + lm * lm - 1.0) <= 1e-12,
                  where + ": lambda_plus^2 + lambda_minus^2 must equal 1");
}

}  // namespace

std::array<FigureParams, 3> ExperimentConfig::default_figures() {
  std::array<FigureParams, 3> f;
  // Caption parameters: balanced, d/b = 4, k = 0, t/tau = 1; figure 2 at x/b = 1.
  for (auto& p : f) {
    p.d = 4.0;
    p.k = 0.0;
    p.s = 1.0;
    p.x = 1.0;
  }
  return f;
}

void ExperimentConfig::validate() const {
  require_lambdas(physics.lambda_plus, physics.lambda_minus, "physics");
  PacketParams{physics.d, physics.k, physics.s, Slit::plus}.validate();
  detail::require(std::isfinite(physics.phi), "physics: phi must be finite");
  const char* names[] = {"figure1", "figure2", "figure3"};
  for (std::size_t i = 0; i < figures.size(); ++i) {
    const auto& f = figures[i];
    require_lambdas(f.lambda_plus, f.lambda_minus, names[i]);
    PacketParams{f.d, f.k, f.s, Slit::plus}.validate();
    detail::require(std::isfinite(f.x) && std::isfinite(f.phi), std::string(names[i]) + ": x and phi must be finite");
  }
  figures[0].x_axis.validate("figure1 x");
  figures[1].s_axis.validate("figure2 t/tau");
  detail::require(figures[1].s_axis.lo >= 0.0, "figure2: t/tau grid must start at >= 0");
  figures[2].x_axis.validate("figure3 x");
  figures[2].k_axis.validate("figure3 k");
  regions.validate();
  detail::require(sampling.n >= 1, "sampling: n must be >= 1");
  detail::require(sampling.shards >= 1, "sampling: shards must be >= 1");
  detail::require(sampling.bins >= 1, "sampling: bins must be >= 1");
  detail::require(sampling.bin_width > 0.0 && std::isfinite(sampling.bin_width), "sampling: bin_width must be > 0");
  detail::require(!sampling.bin_center || std::isfinite(*sampling.bin_center), "sampling: bin_center must be finite");
  sampling.table_axis.validate("sampling table");
  detail::require(verify.draws >= 1 && verify.oracle_draws >= 1 && verify.projection_draws >= 1,
                  "verify: draw counts must be >= 1");
}

ScreenParams ExperimentConfig::screen_params() const {
  ScreenParams p;
  p.lambda_plus = physics.lambda_plus;
  p.lambda_minus = physics.lambda_minus;
  p.phi = physics.phi;
  p.d = physics.d;
  p.k = physics.k;
  p.s = physics.s;
  p.scenario = sampling.scenario;
  p.convention = sampling.convention;
  return p;
}

ProtocolConfig ExperimentConfig::protocol() const {
  ProtocolConfig p;
  p.lambda_plus = physics.lambda_plus;
  p.lambda_minus = physics.lambda_minus;
  p.phi = physics.phi;
  p.d = physics.d;
  p.k = physics.k;
  p.s = physics.s;
  p.convention = protocol_convention;
  p.regions = regions;
  return p;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  detail::fail("format must be 'csv' or 'json', got '" + name + "'");
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  json root;
  try {
    root = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    detail::fail(std::string("config: malformed JSON: ") + e.what());
  }
  if (root.is_null()) return cfg;
  expect_object(root, "<root>");
  reject_unknown(root,
                 {"physics", "figure1", "figure2", "figure3", "detectors", "protocol", "sampling", "verify", "format"},
                 "");

  if (root.contains("physics")) {
    const auto& o = root.at("physics");
    expect_object(o, "physics");
    reject_unknown(o, {"lambda_plus", "lambda_minus", "phi", "d_over_b", "k_b", "t_over_tau"}, "physics");
    read_number(o, "lambda_plus", cfg.physics.lambda_plus, "physics");
    read_number(o, "lambda_minus", cfg.physics.lambda_minus, "physics");
    read_number(o, "phi", cfg.physics.phi, "physics");
    read_number(o, "d_over_b", cfg.physics.d, "physics");
    read_number(o, "k_b", cfg.physics.k, "physics");
    read_number(o, "t_over_tau", cfg.physics.s, "physics");
  }
  read_figure(root, "figure1", cfg.figures[0], Figure::position);
  read_figure(root, "figure2", cfg.figures[1], Figure::time);
  read_figure(root, "figure3", cfg.figures[2], Figure::position_wavenumber);

  if (root.contains("detectors")) {
    const auto& o = root.at("detectors");
    expect_object(o, "detectors");
    reject_unknown(o, {"D1", "D2", "D3"}, "detectors");
    read_region(o, "D1", cfg.regions.d1);
    read_region(o, "D2", cfg.regions.d2);
    read_region(o, "D3", cfg.regions.d3);
  }
  if (root.contains("protocol")) {
    const auto& o = root.at("protocol");
    expect_object(o, "protocol");
    reject_unknown(o, {"convention"}, "protocol");
    std::string conv = to_string(cfg.protocol_convention);
    read(o, "convention", conv, "protocol");
    cfg.protocol_convention = parse_convention(conv);
  }
  if (root.contains("sampling")) {
    const auto& o = root.at("sampling");
    const std::string path = "sampling";
    expect_object(o, path);
    reject_unknown(o,
                   {"scenario", "convention", "n", "seed", "shards", "threads", "bins", "bin_center", "bin_width",
                    "phase_scan_points", "table_grid"},
                   path);
    std::string scenario = to_string(cfg.sampling.scenario);
    read(o, "scenario", scenario, path);
    cfg.sampling.scenario = parse_scenario(scenario);
    std::string conv = to_string(cfg.sampling.convention);
    read(o, "convention", conv, path);
    cfg.sampling.convention = parse_convention(conv);
    read_count(o, "n", cfg.sampling.n, path);
    if (o.contains("seed")) {
      detail::require(o.at("seed").is_number_unsigned(), "config: 'sampling.seed' must be a non-negative integer");
      cfg.sampling.seed = o.at("seed").get<std::uint64_t>();
    }
    read_count(o, "shards", cfg.sampling.shards, path);
    read_count(o, "threads", cfg.sampling.threads, path);
    read_count(o, "bins", cfg.sampling.bins, path);
    if (o.contains("bin_center")) {
      double c = 0.0;
      read_number(o, "bin_center", c, path);
      cfg.sampling.bin_center = c;
    }
    read_number(o, "bin_width", cfg.sampling.bin_width, path);
    read_count(o, "phase_scan_points", cfg.sampling.phase_scan_points, path);
    read_axis(o, "table_grid", cfg.sampling.table_axis, path);
  }
  if (root.contains("verify")) {
    const auto& o = root.at("verify");
    expect_object(o, "verify");
    reject_unknown(o, {"draws", "oracle_draws", "projection_draws", "seed"}, "verify");
    read_count(o, "draws", cfg.verify.draws, "verify");
    read_count(o, "oracle_draws", cfg.verify.oracle_draws, "verify");
    read_count(o, "projection_draws", cfg.verify.projection_draws, "verify");
    if (o.contains("seed")) {
      detail::require(o.at("seed").is_number_unsigned(), "config: 'verify.seed' must be a non-negative integer");
      cfg.verify.seed = o.at("seed").get<std::uint64_t>();
    }
  }
  if (root.contains("format")) {
    detail::require(root.at("format").is_string(), "config: 'format' must be a string");
    cfg.format = parse_format(root.at("format").get<std::string>());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), "config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return ExperimentConfig{};
  return parse_config(text);
}

}  // namespace whichway::cli
