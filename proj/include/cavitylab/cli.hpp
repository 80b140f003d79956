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

// Subcommands of the cavitylab executable. Each command writes results to
// `out` and diagnostics to `err`, and returns the process exit code.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "cavitylab/config.hpp"

namespace cavitylab::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeFailure = 1,  // singular steady-state system, non-finite state
  kConfigError = 2,
  kTruncationError = 3,
  kCheckFailed = 4,  // noise-check / superpose verdict negative
};

struct CommandOptions {
  std::string config_path;
  std::optional<std::string> out_path;
  std::uint64_t seed = 1;
};

int cmd_steady(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_compare(const RunConfig& cfg, std::ostream& out);
int cmd_noise_check(const RunConfig& cfg, std::uint64_t seed, std::ostream& out);
int cmd_superpose(const RunConfig& cfg, std::ostream& out);

/// Loads the config, dispatches, maps exceptions onto exit codes and, with
/// an out path, writes the result through a temporary file and a rename so
/// no partial file is ever left behind.
int run(const std::string& command, const CommandOptions& opts, std::ostream& out, std::ostream& err);

/// Writes `text` to `path` via `path.tmp` + rename.
void write_atomically(const std::string& path, const std::string& text);

}  // namespace cavitylab::cli
