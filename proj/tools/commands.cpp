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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "whichway/complementarity.hpp"
#include "whichway/error.hpp"

namespace whichway::cli {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    detail::require(static_cast<bool>(out), "cannot write output file '" + path + "'");
    out << content;
    out.flush();
    detail::require(static_cast<bool>(out), "failed writing output file '" + path + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    detail::fail("cannot move output into place at '" + path + "'");
  }
}

namespace {

constexpr const char* kFigureColumns[] = {"x_over_b", "t_over_tau", "k_b", "V_x", "K_x", "delta", "density"};
constexpr double kRowTolerance = 1e-9;

void emit(const std::optional<std::string>& out, const std::string& content, std::ostream& stdout_stream) {
  if (out && !out->empty())
    write_file_atomic(*out, content);
  else
    stdout_stream << content;
}

std::string figure_name(Figure f) {
  switch (f) {
    case Figure::position: return "1";
    case Figure::time: return "2";
    case Figure::position_wavenumber: return "3";
  }
  return "?";
}

}  // namespace

std::string render_figure(Figure figure, const FigureParams& params, OutputFormat format) {
  const auto rows = figure_scan(figure, params);
  for (const auto& r : rows) {
    const double residual = std::abs(r.V_x * r.V_x + r.K_x * r.K_x - 1.0);
    if (!(residual < kRowTolerance))
      throw InvariantFailure("figure row at x_over_b=" + format_double(r.x) + " t_over_tau=" + format_double(r.s) +
                             " k_b=" + format_double(r.k) + " violates V_x^2+K_x^2=1 (residual " +
                             format_double(residual) + ")");
  }

  if (format == OutputFormat::json) {
    json doc;
    doc["figure"] = std::stoi(figure_name(figure));
    doc["columns"] = kFigureColumns;
    json table = json::array();
    for (const auto& r : rows) table.push_back({r.x, r.s, r.k, r.V_x, r.K_x, r.delta, r.density});
    doc["rows"] = std::move(table);
    return doc.dump(1) + "\n";
  }

  std::string out;
  out.reserve(rows.size() * 140);
  for (std::size_t i = 0; i < std::size(kFigureColumns); ++i) {
    if (i) out += ',';
    out += kFigureColumns[i];
  }
  out += '\n';
  for (const auto& r : rows) {
    for (double v : {r.x, r.s, r.k, r.V_x, r.K_x, r.delta, r.density}) {
      out += format_double(v);
      out += ',';
    }
    out.back() = '\n';
  }
  return out;
}

SampleOutputs render_sample(const ExperimentConfig& config) {
  const auto params = config.screen_params();
  const ScreenDensity density(params);
  SampleOptions options;
  options.shards = config.sampling.shards;
  options.threads = config.sampling.threads;
  options.histogram_bins = config.sampling.bins;
  const auto run = sample(density, config.sampling.n, config.sampling.seed, options);

  const CdfTable fine(density, density.window(1u << 16));
  const auto fine_values = fine.values();
  const auto& fine_grid = fine.grid();
  const double ks = ks_statistic(run.draws, [&](double x) {
    if (x <= fine_grid.lo) return 0.0;
    if (x >= fine_grid.hi) return 1.0;
    const double pos = (x - fine_grid.lo) / fine_grid.step();
    const auto i = std::min(static_cast<std::size_t>(pos), fine_values.size() - 2);
    const double frac = pos - static_cast<double>(i);
    return fine_values[i] + frac * (fine_values[i + 1] - fine_values[i]);
  });

  const bool has_posterior = params.scenario != Scenario::no_detector;
  const double center = config.sampling.bin_center.value_or(eraser_locus(params.d, params.k, params.s));
  std::optional<VisibilityEstimate> eraser_bin;
  if (has_posterior)
    eraser_bin = empirical_conditioned_visibility(run, center, config.sampling.bin_width,
                                                  config.sampling.phase_scan_points);

  struct TableRow {
    double x;
    std::size_t count;
    std::optional<double> empirical;
    double analytic;
  };
  std::vector<TableRow> table;
  if (has_posterior) {
    const auto& axis = config.sampling.table_axis;
    for (std::size_t i = 0; i < axis.points; ++i) {
      const double x = axis.value(i);
      const auto est = empirical_conditioned_visibility(run, x, config.sampling.bin_width,
                                                        config.sampling.phase_scan_points);
      table.push_back({x, est ? est->count : 0, est ? std::optional<double>(est->value) : std::nullopt,
                       visibility(posterior_at(params, x))});
    }
  }

  std::ostringstream summary;
  summary << "scenario=" << to_string(params.scenario) << "\n"
          << "algorithm=" << run.algorithm << "\n"
          << "seed=" << run.seed << "\n"
          << "n=" << run.n << "\n"
          << "shards=" << run.shards << "\n"
          << "normalization=" << format_double(density.normalization()) << "\n"
          << "mean=" << format_double(run.stats.mean) << "\n"
          << "variance=" << format_double(run.stats.variance) << "\n"
          << "fraction_negative=" << format_double(run.stats.fraction_negative) << "\n"
          << "ks_statistic=" << format_double(ks) << "\n"
          << "ks_threshold_alpha_0.01=" << format_double(1.63 / std::sqrt(static_cast<double>(run.n))) << "\n";
  if (eraser_bin)
    summary << "eraser_bin_center=" << format_double(center) << "\n"
            << "eraser_bin_count=" << eraser_bin->count << "\n"
            << "eraser_bin_visibility=" << format_double(eraser_bin->value) << "\n";

  SampleOutputs out;
  out.summary = summary.str();
  const auto& h = run.histogram;
  const double bin_width = h.edges[1] - h.edges[0];

  if (config.format == OutputFormat::json) {
    json doc;
    doc["scenario"] = to_string(params.scenario);
    doc["algorithm"] = run.algorithm;
    doc["seed"] = run.seed;
    doc["n"] = run.n;
    doc["shards"] = run.shards;
    doc["normalization"] = density.normalization();
    doc["mean"] = run.stats.mean;
    doc["variance"] = run.stats.variance;
    doc["fraction_negative"] = run.stats.fraction_negative;
    doc["ks_statistic"] = ks;
    if (eraser_bin)
      doc["eraser_bin"] = {{"center", center}, {"count", eraser_bin->count}, {"visibility", eraser_bin->value}};
    json hist = json::array();
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      const double mid = 0.5 * (h.edges[i] + h.edges[i + 1]);
      hist.push_back({{"bin_lo", h.edges[i]},
                      {"bin_hi", h.edges[i + 1]},
                      {"count", h.counts[i]},
                      {"empirical_density", static_cast<double>(h.counts[i]) / (run.n * bin_width)},
                      {"analytic_density", density.density_at(mid)}});
    }
    doc["histogram"] = std::move(hist);
    json vis = json::array();
    for (const auto& r : table)
      vis.push_back({{"x_over_b", r.x},
                     {"count", r.count},
                     {"V_empirical", r.empirical ? json(*r.empirical) : json(nullptr)},
                     {"V_analytic", r.analytic}});
    doc["visibility"] = std::move(vis);
    out.histogram = doc.dump(1) + "\n";
    return out;
  }

  std::string csv = "bin_lo,bin_hi,count,empirical_density,analytic_density\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double mid = 0.5 * (h.edges[i] + h.edges[i + 1]);
    csv += format_double(h.edges[i]) + "," + format_double(h.edges[i + 1]) + "," + std::to_string(h.counts[i]) + "," +
           format_double(static_cast<double>(h.counts[i]) / (static_cast<double>(run.n) * bin_width)) + "," +
           format_double(density.density_at(mid)) + "\n";
  }
  out.histogram = std::move(csv);
  if (has_posterior) {
    std::string vis = "x_over_b,count,V_empirical,V_analytic\n";
    for (const auto& r : table)
      vis += format_double(r.x) + "," + std::to_string(r.count) + "," +
             (r.empirical ? format_double(*r.empirical) : std::string("nan")) + "," + format_double(r.analytic) +
             "\n";
    out.visibility_table = std::move(vis);
  }
  return out;
}

std::string render_waveparticle(const ExperimentConfig& config, OutputFormat format) {
  const auto protocol = config.protocol();
  const auto stages = run_protocol(protocol);
  const auto reports = detector_reports(protocol);

  auto mean_entries = [](const DetectorReport& r) {
    std::array<double, 4> e{0.0, 0.0, 0.0, 0.0};
    if (r.mean_state) e = {(*r.mean_state)(0, 0).real(), (*r.mean_state)(1, 1).real(), (*r.mean_state)(0, 1).real(),
                           (*r.mean_state)(0, 1).imag()};
    return e;
  };

  if (format == OutputFormat::json) {
    json doc;
    doc["convention"] = to_string(protocol.convention);
    doc["postselection_probability"] = stages.excited.probability;
    doc["postselection_path_probability"] = stages.excited.path_probability;
    json dets = json::array();
    for (const auto& r : reports) {
      const auto m = mean_entries(r);
      dets.push_back({{"detector", to_string(r.detector)},
                      {"region", {r.region.lo, r.region.hi}},
                      {"probability", r.probability},
                      {"fidelity_wave", r.fidelity_wave},
                      {"fidelity_particle", r.fidelity_particle},
                      {"fidelity_superposition", r.fidelity_superposition},
                      {"mean_state", {{"rho00", m[0]}, {"rho11", m[1]}, {"re_rho01", m[2]}, {"im_rho01", m[3]}}},
                      {"center_x", 0.5 * (r.region.lo + r.region.hi)},
                      {"center_state",
                       {{"re0", r.center_state.v[0].real()},
                        {"im0", r.center_state.v[0].imag()},
                        {"re1", r.center_state.v[1].real()},
                        {"im1", r.center_state.v[1].imag()}}},
                      {"center_fidelity_wave", r.center_fidelity_wave},
                      {"center_fidelity_particle", r.center_fidelity_particle},
                      {"center_fidelity_superposition", r.center_fidelity_superposition}});
    }
    doc["detectors"] = std::move(dets);
    return doc.dump(1) + "\n";
  }

  std::string csv =
      "detector,region_lo,region_hi,probability,fidelity_wave,fidelity_particle,fidelity_superposition,"
      "rho00,rho11,re_rho01,im_rho01,center_x,center_re0,center_im0,center_re1,center_im1,"
      "center_fidelity_wave,center_fidelity_particle,center_fidelity_superposition\n";
  for (const auto& r : reports) {
    const auto m = mean_entries(r);
    csv += to_string(r.detector);
    for (double v : {r.region.lo, r.region.hi, r.probability, r.fidelity_wave, r.fidelity_particle,
                     r.fidelity_superposition, m[0], m[1], m[2], m[3], 0.5 * (r.region.lo + r.region.hi),
                     r.center_state.v[0].real(), r.center_state.v[0].imag(), r.center_state.v[1].real(),
                     r.center_state.v[1].imag(), r.center_fidelity_wave, r.center_fidelity_particle,
                     r.center_fidelity_superposition})
      csv += "," + format_double(v);
    csv += "\n";
  }
  return csv;
}

std::string render_verify_report(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed();
    out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": max residual " << format_double(r.max_residual)
        << " (tolerance " << format_double(r.tolerance) << ", " << r.cases << " cases)\n";
    if (!r.passed()) out << "     worst case: " << r.worst_case << "\n";
  }
  out << (all ? "all invariants hold\n" : "invariant failure\n");
  return out.str();
}

int cmd_figure(int figure_id, const ExperimentConfig& config, const std::optional<std::string>& out,
               std::ostream& stdout_stream) {
  detail::require(figure_id >= 1 && figure_id <= 3, "invalid figure id " + std::to_string(figure_id));
  config.validate();
  const auto figure = static_cast<Figure>(figure_id);
  try {
    emit(out, render_figure(figure, config.figures[figure_id - 1], config.format), stdout_stream);
  } catch (const InvariantFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariantFailure;
  }
  return kExitOk;
}

int cmd_verify(const ExperimentConfig& config, const VerifyOptions& options, std::ostream& stdout_stream) {
  config.validate();
  const auto results = run_invariant_suite(config.verify, options);
  stdout_stream << render_verify_report(results);
  for (const auto& r : results)
    if (!r.passed()) return kExitInvariantFailure;
  return kExitOk;
}

int cmd_sample(const ExperimentConfig& config, const std::optional<std::string>& out, std::ostream& stdout_stream) {
  config.validate();
  const auto outputs = render_sample(config);
  if (out && !out->empty()) {
    write_file_atomic(*out, outputs.histogram);
    if (!outputs.visibility_table.empty()) write_file_atomic(*out + ".visibility.csv", outputs.visibility_table);
    stdout_stream << outputs.summary;
  } else {
    stdout_stream << outputs.histogram;
    if (!outputs.visibility_table.empty()) stdout_stream << "\n" << outputs.visibility_table;
    stdout_stream << "\n" << outputs.summary;
  }
  return kExitOk;
}

int cmd_waveparticle(const ExperimentConfig& config, const std::optional<std::string>& out,
                     std::ostream& stdout_stream) {
  config.validate();
  emit(out, render_waveparticle(config, config.format), stdout_stream);
  return kExitOk;
}

}  // namespace whichway::cli
