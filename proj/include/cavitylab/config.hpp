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

// Strict JSON run configuration. The schema is documented in docs/config.md;
// every object rejects unknown keys.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cavitylab/model.hpp"

namespace cavitylab {

enum class Engine { Analytic, Moments, Oracle };

std::string_view to_string(Engine e) noexcept;
Engine parse_engine(std::string_view name);

enum class SweepAxis { Epsilon, G, Kappa };

std::string_view to_string(SweepAxis a) noexcept;

/// Raw (g, kappa, epsilon) before validation; sweeps substitute one field.
struct RawParams {
  double g;
  double kappa;
  double epsilon;

  ModelParams validated() const { return validate_params(g, kappa, epsilon); }
  RawParams with(SweepAxis axis, double value) const;
};

struct IntegratorOverrides {
  std::optional<double> dt;
  std::optional<double> tol;
  std::optional<double> max_time;
};

struct NoiseSettings {
  double dt = 1e-3;
  std::int64_t steps = 10000;
  std::int64_t trials = 200;
};

struct SweepSpec {
  SweepAxis axis;
  std::vector<double> values;  // non-empty, strictly increasing
  RawParams base;
  std::vector<Engine> engines;
};

struct SuperposeState {
  std::complex<double> alpha;
  std::complex<double> beta;
};

struct SuperposeSettings {
  int n_max = 3;
  std::vector<SuperposeState> states{{{0.0, 0.0}, {0.0, 0.0}}, {{0.3, 0.0}, {0.3, 0.0}}, {{1.0, 0.0}, {0.0, 1.0}}};
};

struct RunConfig {
  std::optional<RawParams> params;  // required by every command except superpose
  TruncationSpec truncation;
  std::vector<Engine> engines{Engine::Analytic, Engine::Moments, Engine::Oracle};
  IntegratorOverrides integrator;
  NoiseSettings noise;
  std::optional<SweepSpec> sweep;
  SuperposeSettings superpose;

  /// Validated model parameters; ConfigError if the model keys were absent.
  ModelParams model() const;
};

/// Parses and validates a configuration document. Throws ConfigError on
/// malformed JSON, missing or unknown keys, wrong types, or values that fail
/// model validation.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

}  // namespace cavitylab
