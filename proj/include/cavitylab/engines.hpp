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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cavitylab/config.hpp"
#include "cavitylab/model.hpp"

namespace cavitylab {

/// One engine's steady-state expectations at a single parameter point.
struct SteadyStateReport {
  Engine engine = Engine::Analytic;
  /// Atomic columns carry no steady-state information (g == 0).
  bool decoupled = false;
  double eta_a = 0.0;
  double eta_b = 0.0;
  double sigma_re = 0.0;
  double aa_dag = 0.0;
  double adag_a = 0.0;
  double nbar = 0.0;
  double commutator = 0.0;
  std::optional<double> edge_population;  // oracle only
  std::optional<bool> converged;          // moments only
};

struct EngineOptions {
  TruncationSpec truncation;
  IntegratorOverrides integrator;
};

SteadyStateReport run_engine(Engine engine, const ModelParams& p, const EngineOptions& opts);

/// oracle - analytic for the quantities the two engines are compared on.
struct Discrepancy {
  bool decoupled = false;  // eta_a not compared
  double eta_a = 0.0;
  double nbar = 0.0;
  double commutator = 0.0;
};

/// Engine reports for one axis value, plus discrepancies when both the
/// analytic and oracle engines ran.
struct ComparisonRow {
  double axis_value;
  ModelParams params;
  std::vector<SteadyStateReport> reports;  // in requested engine order
  std::optional<Discrepancy> discrepancy;

  const SteadyStateReport* find(Engine e) const;
};

ComparisonRow compare_point(double axis_value, const ModelParams& p, const std::vector<Engine>& engines,
                            const EngineOptions& opts);

/// Runs every sweep point; rows come back in axis order regardless of how
/// many worker threads were used. `threads` <= 1 runs serially.
std::vector<ComparisonRow> run_sweep(const SweepSpec& spec, const EngineOptions& opts, unsigned threads);

/// Sweep worker cap from CAVITYLAB_THREADS; 1 when unset or invalid.
unsigned threads_from_env();

inline constexpr const char* kCsvHeader =
    "axis_value,engine,eta_a,eta_b,sigma_re,aa_dag,adag_a,nbar,commutator,edge_population,converged";

/// 12 significant digits, "%.12g".
std::string format_number(double x);

/// CSV text (header plus one line per engine report and discrepancy row).
std::string sweep_csv(const std::vector<ComparisonRow>& rows);

}  // namespace cavitylab
