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

#include "cavitylab/engines.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "cavitylab/analytic.hpp"
#include "cavitylab/lindblad.hpp"
#include "cavitylab/moments.hpp"

namespace cavitylab {

namespace {

SteadyStateReport run_analytic(const ModelParams& p) {
  SteadyStateReport r;
  r.engine = Engine::Analytic;
  const auto atom = analytic::atomic_steady_state(p);
  r.decoupled = atom.is_decoupled();
  if (!r.decoupled) {
    r.eta_a = atom.eta_a();
    r.eta_b = atom.eta_b();
    r.sigma_re = atom.sigma();
  }
  const auto cavity = analytic::cavity_steady_state(p);
  r.aa_dag = cavity.aa_dag;
  r.adag_a = cavity.adag_a;
  r.nbar = cavity.nbar;
  r.commutator = cavity.commutator_expectation;
  return r;
}

SteadyStateReport run_moments(const ModelParams& p, const IntegratorOverrides& overrides) {
  auto cfg = moments::default_integrator(p);
  cfg = moments::validate_integrator(overrides.dt.value_or(cfg.dt), overrides.tol.value_or(cfg.tol),
                                     overrides.max_time.value_or(cfg.max_time));
  const auto result = moments::integrate_to_steady_state(p, moments::MomentState<double>::ground(), cfg);

  SteadyStateReport r;
  r.engine = Engine::Moments;
  r.decoupled = regime_report(p) == RegimeLabel::FreeMode;
  r.eta_a = result.state.eta_a;
  r.eta_b = 1.0 - result.state.eta_a;
  r.sigma_re = result.state.sigma_mean.real();
  r.aa_dag = result.state.aa_dag;
  r.adag_a = result.state.adag_a;
  r.nbar = result.state.adag_a;
  r.commutator = result.state.aa_dag - result.state.adag_a;
  r.converged = result.converged;
  return r;
}

SteadyStateReport run_oracle(const ModelParams& p, const TruncationSpec& truncation) {
  const auto sol = lindblad::solve_oracle(p, truncation);
  SteadyStateReport r;
  r.engine = Engine::Oracle;
  r.decoupled = regime_report(p) == RegimeLabel::FreeMode;
  r.eta_a = sol.report.eta_a;
  r.eta_b = sol.report.eta_b;
  r.sigma_re = sol.report.sigma.real();
  r.aa_dag = sol.report.aa_dag;
  r.adag_a = sol.report.adag_a;
  r.nbar = sol.report.nbar;
  r.commutator = sol.report.commutator_expectation;
  r.edge_population = sol.report.edge_population;
  return r;
}

}  // namespace

SteadyStateReport run_engine(Engine engine, const ModelParams& p, const EngineOptions& opts) {
  switch (engine) {
    case Engine::Analytic: return run_analytic(p);
    case Engine::Moments: return run_moments(p, opts.integrator);
    case Engine::Oracle: return run_oracle(p, opts.truncation);
  }
  throw DomainError("unknown engine");
}

const SteadyStateReport* ComparisonRow::find(Engine e) const {
  for (const auto& r : reports)
    if (r.engine == e) return &r;
  return nullptr;
}

ComparisonRow compare_point(double axis_value, const ModelParams& p, const std::vector<Engine>& engines,
                            const EngineOptions& opts) {
  ComparisonRow row{axis_value, p, {}, std::nullopt};
  for (Engine e : engines) row.reports.push_back(run_engine(e, p, opts));
  const auto* a = row.find(Engine::Analytic);
  const auto* o = row.find(Engine::Oracle);
  if (a && o) {
    Discrepancy d;
    d.decoupled = a->decoupled || o->decoupled;
    if (!d.decoupled) d.eta_a = o->eta_a - a->eta_a;
    d.nbar = o->nbar - a->nbar;
    d.commutator = o->commutator - a->commutator;
    row.discrepancy = d;
  }
  return row;
}

std::vector<ComparisonRow> run_sweep(const SweepSpec& spec, const EngineOptions& opts, unsigned threads) {
  const std::size_t n = spec.values.size();
  std::vector<std::optional<ComparisonRow>> rows(n);
  std::vector<std::exception_ptr> errors(n);

  auto work = [&](std::size_t i) {
    try {
      const double v = spec.values[i];
      rows[i] = compare_point(v, spec.base.with(spec.axis, v).validated(), spec.engines, opts);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    for (unsigned t = 0; t < count; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<ComparisonRow> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*rows[i]));
  }
  return out;
}

unsigned threads_from_env() {
  const char* raw = std::getenv("CAVITYLAB_THREADS");
  if (raw == nullptr || *raw == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1) return 1;
  return static_cast<unsigned>(v);
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string sweep_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  const std::string na = "NA";
  const std::string decoupled = "decoupled";
  for (const auto& row : rows) {
    const std::string axis = format_number(row.axis_value);
    for (const auto& r : row.reports) {
      out << axis << ',' << to_string(r.engine) << ',';
      if (r.decoupled) {
        out << decoupled << ',' << decoupled << ',' << decoupled << ',';
      } else {
        out << format_number(r.eta_a) << ',' << format_number(r.eta_b) << ',' << format_number(r.sigma_re) << ',';
      }
      out << format_number(r.aa_dag) << ',' << format_number(r.adag_a) << ',' << format_number(r.nbar) << ','
          << format_number(r.commutator) << ','
          << (r.edge_population ? format_number(*r.edge_population) : na) << ','
          << (r.converged ? (*r.converged ? "true" : "false") : na) << '\n';
    }
    if (row.discrepancy) {
      const auto& d = *row.discrepancy;
      out << axis << ",oracle_minus_analytic," << (d.decoupled ? decoupled : format_number(d.eta_a)) << ','
          << na << ',' << na << ',' << na << ',' << na << ',' << format_number(d.nbar) << ','
          << format_number(d.commutator) << ',' << na << ',' << na << '\n';
    }
  }
  return out.str();
}

}  // namespace cavitylab
