// Copyright 2026 The cavitylab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cavitylab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cavitylab: steady states of a driven cavity mode coupled to a two-level atom"};
  app.require_subcommand(1);

  cavitylab::cli::CommandOptions opts;
  std::string out_path;
  const struct {
    const char* name;
    const char* help;
  } commands[] = {
      {"steady", "single-point report from each configured engine (JSON)"},
      {"sweep", "parameter sweep over one axis (CSV)"},
      {"compare", "analytic vs moment integrator vs exact oracle (JSON)"},
      {"noise-check", "Monte Carlo estimate of the amplitude/noise correlation (JSON)"},
      {"superpose", "commutator and photon-number checks for c = a + i b (JSON)"},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", opts.config_path, "JSON config path")->required();
    sub->add_option("--out", out_path, "write output to this path instead of stdout");
    sub->add_option("--seed", opts.seed, "RNG seed (noise-check)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cerr, std::cerr);
    return code == 0 ? 0 : cavitylab::cli::kConfigError;
  }

  if (!out_path.empty()) opts.out_path = out_path;
  const std::string command = app.get_subcommands().front()->get_name();
  return cavitylab::cli::run(command, opts, std::cout, std::cerr);
}
