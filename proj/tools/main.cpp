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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "whichway/error.hpp"

namespace cli = whichway::cli;

int main(int argc, char** argv) {
  CLI::App app{"whichway: two-slit which-way detector simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<std::string> format;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON experiment config");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* figure = app.add_subcommand("figure", "Emit the data behind figure 1, 2 or 3");
  int figure_id = 0;
  figure->add_option("id", figure_id, "Figure number (1, 2 or 3)")->required();
  add_common(figure);
  figure->add_option("--out", out_path, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run the invariant and oracle suite");
  add_common(verify);
  bool inject_fault = false;
  verify->add_flag("--inject-fault", inject_fault, "Flip the sign of delta in the closed-form route");
  verify->add_option("--seed", seed, "Seed for the random parameter draws");

  auto* sample = app.add_subcommand("sample", "Monte Carlo screen detections");
  add_common(sample);
  sample->add_option("--out", out_path, "Histogram output file (default stdout)");
  sample->add_option("--seed", seed, "Sampler seed");
  sample->add_option("--n", n, "Number of draws");

  auto* waveparticle = app.add_subcommand("waveparticle", "Single-cavity wave/particle protocol report");
  add_common(waveparticle);
  waveparticle->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitInvalidInput;
  }

  try {
    auto config = config_path.empty() ? cli::ExperimentConfig{} : cli::load_config(config_path);
    if (format) config.format = cli::parse_format(*format);
    const std::optional<std::string> out = out_path.empty() ? std::nullopt : std::optional(out_path);

    if (*figure) return cli::cmd_figure(figure_id, config, out, std::cout);
    if (*verify) {
      if (seed) config.verify.seed = *seed;
      return cli::cmd_verify(config, cli::VerifyOptions{inject_fault}, std::cout);
    }
    if (*sample) {
      if (seed) config.sampling.seed = *seed;
      if (n) config.sampling.n = *n;
      return cli::cmd_sample(config, out, std::cout);
    }
    if (*waveparticle) return cli::cmd_waveparticle(config, out, std::cout);
  } catch (const whichway::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInvalidInput;
  }
  return cli::kExitInvalidInput;
}
