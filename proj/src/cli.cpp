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

#include "cavitylab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cavitylab/analytic.hpp"
#include "cavitylab/engines.hpp"
#include "cavitylab/errors.hpp"
#include "cavitylab/lindblad.hpp"
#include "cavitylab/stochastic.hpp"

namespace cavitylab::cli {

using nlohmann::ordered_json;

namespace {

// Verdict thresholds for the commutator gap flags in `compare`.
constexpr double kAnalyticUnityTol = 1e-12;
constexpr double kOracleUnityTol = 1e-6;

ordered_json params_json(const ModelParams& p) {
  ordered_json j;
  j["g"] = p.g();
  j["kappa"] = p.kappa();
  j["epsilon"] = p.epsilon();
  j["gamma_c"] = p.gamma_c();
  j["regime"] = std::string(to_string(regime_report(p)));
  return j;
}

ordered_json report_json(const SteadyStateReport& r) {
  ordered_json j;
  j["decoupled"] = r.decoupled;
  if (r.decoupled) {
    j["eta_a"] = nullptr;
    j["eta_b"] = nullptr;
    j["sigma_re"] = nullptr;
  } else {
    j["eta_a"] = r.eta_a;
    j["eta_b"] = r.eta_b;
    j["sigma_re"] = r.sigma_re;
  }
  j["aa_dag"] = r.aa_dag;
  j["adag_a"] = r.adag_a;
  j["nbar"] = r.nbar;
  j["commutator_expectation"] = r.commutator;
  if (r.edge_population) j["edge_population"] = *r.edge_population;
  if (r.converged) j["converged"] = *r.converged;
  return j;
}

ordered_json estimate_json(const stochastic::Estimate& e) {
  ordered_json j;
  j["estimate"] = e.value;
  j["stderr"] = e.std_error;
  return j;
}

ordered_json complex_json(std::complex<double> z) { return ordered_json::array({z.real(), z.imag()}); }

EngineOptions engine_options(const RunConfig& cfg) { return {cfg.truncation, cfg.integrator}; }

/// Vanishing condition for the cross term of <c^dag c>: both means zero,
/// both real, or equal.
bool cross_term_condition(std::complex<double> a, std::complex<double> b) {
  const bool both_zero = a == 0.0 && b == 0.0;
  const bool both_real = a.imag() == 0.0 && b.imag() == 0.0;
  return both_zero || both_real || a == b;
}

}  // namespace

int cmd_steady(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p = cfg.model();
  const auto row = compare_point(0.0, p, cfg.engines, engine_options(cfg));
  ordered_json doc;
  doc["command"] = "steady";
  doc["params"] = params_json(p);
  ordered_json engines = ordered_json::object();
  for (const auto& r : row.reports) engines[std::string(to_string(r.engine))] = report_json(r);
  doc["engines"] = engines;
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.sweep) throw ConfigError("sweep command needs a \"sweep\" object");
  const auto rows = run_sweep(*cfg.sweep, engine_options(cfg), threads_from_env());
  out << sweep_csv(rows);
  return kOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p = cfg.model();
  const auto row = compare_point(0.0, p, {Engine::Analytic, Engine::Moments, Engine::Oracle}, engine_options(cfg));
  const auto& a = *row.find(Engine::Analytic);
  const auto& m = *row.find(Engine::Moments);
  const auto& o = *row.find(Engine::Oracle);

  ordered_json doc;
  doc["command"] = "compare";
  doc["params"] = params_json(p);
  ordered_json engines = ordered_json::object();
  for (const auto& r : row.reports) engines[std::string(to_string(r.engine))] = report_json(r);
  doc["engines"] = engines;

  ordered_json table = ordered_json::array();
  auto add = [&](const char* name, double SteadyStateReport::*field, bool atomic) {
    ordered_json line;
    line["quantity"] = name;
    const bool skip = atomic && a.decoupled;
    for (const auto* r : {&a, &m, &o}) {
      line[std::string(to_string(r->engine))] = skip ? ordered_json(nullptr) : ordered_json(r->*field);
    }
    line["oracle_minus_analytic"] = skip ? ordered_json(nullptr) : ordered_json(o.*field - a.*field);
    table.push_back(line);
  };
  add("commutator_expectation", &SteadyStateReport::commutator, false);
  add("nbar", &SteadyStateReport::nbar, false);
  add("aa_dag", &SteadyStateReport::aa_dag, false);
  add("adag_a", &SteadyStateReport::adag_a, false);
  add("eta_a", &SteadyStateReport::eta_a, true);
  add("eta_b", &SteadyStateReport::eta_b, true);
  add("sigma_re", &SteadyStateReport::sigma_re, true);
  doc["table"] = table;

  ordered_json gap;
  gap["analytic_differs_from_one"] = std::abs(a.commutator - 1.0) > kAnalyticUnityTol;
  gap["oracle_equals_one"] = std::abs(o.commutator - 1.0) <= kOracleUnityTol;
  gap["analytic_minus_oracle"] = a.commutator - o.commutator;
  doc["commutator_gap"] = gap;
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_noise_check(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
  const ModelParams p = cfg.model();
  stochastic::MonteCarloConfig mc;
  mc.dt = cfg.noise.dt;
  mc.steps = cfg.noise.steps;
  mc.trials = cfg.noise.trials;
  mc.seed = seed;
  const auto rep = stochastic::estimate_correlation(p, mc);
  const bool pass = std::abs(rep.midpoint.value - rep.expected) <= 3.0 * rep.midpoint.std_error;

  ordered_json doc;
  doc["command"] = "noise-check";
  doc["kappa"] = p.kappa();
  doc["expected"] = rep.expected;
  doc["dt"] = mc.dt;
  doc["steps"] = mc.steps;
  doc["trials"] = mc.trials;
  doc["seed"] = seed;
  doc["midpoint"] = estimate_json(rep.midpoint);
  doc["ito"] = estimate_json(rep.ito);
  doc["full"] = estimate_json(rep.full);
  doc["pass"] = pass;
  out << doc.dump(2) << '\n';
  return pass ? kOk : kCheckFailed;
}

int cmd_superpose(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::pair<std::complex<double>, std::complex<double>>> amplitudes;
  for (const auto& s : cfg.superpose.states) amplitudes.emplace_back(s.alpha, s.beta);
  const auto matrix = lindblad::two_mode_superposition_check<double>(cfg.superpose.n_max, amplitudes);

  bool ok = matrix.max_deviation == 0.0;
  ordered_json states = ordered_json::array();
  for (const auto& cs : matrix.cases) {
    // Ideal coherent modes: <a> = alpha, <a^dag a> = |alpha|^2, commutator 1.
    const analytic::ModeStats<double> ideal_a{cs.alpha, std::norm(cs.alpha), 1.0};
    const analytic::ModeStats<double> ideal_b{cs.beta, std::norm(cs.beta), 1.0};
    const auto formula = analytic::superposition_mean_photons(ideal_a, ideal_b, false);
    const bool condition = cross_term_condition(cs.alpha, cs.beta);
    const bool matrix_vanishes = std::abs(cs.matrix_cross_term) <= lindblad::kCrossTermTol;
    const bool consistent = formula.additive == condition && matrix_vanishes == condition;
    ok = ok && consistent;

    ordered_json j;
    j["a"] = complex_json(cs.alpha);
    j["b"] = complex_json(cs.beta);
    ordered_json f;
    f["commutator"] = analytic::superposition_commutator(ideal_a, ideal_b);
    f["mean_photons"] = formula.value;
    f["cross_term"] = formula.cross_term;
    f["additive"] = formula.additive;
    j["formula"] = f;
    ordered_json mx;
    mx["mean_a"] = complex_json(cs.mode_a.mean_amplitude);
    mx["mean_b"] = complex_json(cs.mode_b.mean_amplitude);
    mx["photons_a"] = cs.mode_a.mean_photons;
    mx["photons_b"] = cs.mode_b.mean_photons;
    mx["photons_c"] = cs.c_photons;
    mx["commutator_c"] = analytic::superposition_commutator(cs.mode_a, cs.mode_b);
    mx["cross_term"] = cs.matrix_cross_term;
    mx["cross_term_vanishes"] = matrix_vanishes;
    j["matrix"] = mx;
    j["vanishing_condition"] = condition;
    j["consistent"] = consistent;
    states.push_back(j);
  }

  ordered_json doc;
  doc["command"] = "superpose";
  doc["n_max"] = matrix.n_max;
  doc["commutator_identity_max_deviation"] = matrix.max_deviation;
  doc["cross_commutator_max"] = matrix.max_cross_commutator;
  doc["states"] = states;
  doc["pass"] = ok;
  out << doc.dump(2) << '\n';
  return ok ? kOk : kCheckFailed;
}

void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open '" + tmp + "' for writing");
    f << text;
    f.flush();
    if (!f) {
      std::filesystem::remove(tmp);
      throw ConfigError("failed writing '" + tmp + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

int run(const std::string& command, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = load_config(opts.config_path);
    std::ostringstream buffer;
    int code = kOk;
    if (command == "steady") {
      code = cmd_steady(cfg, buffer);
    } else if (command == "sweep") {
      code = cmd_sweep(cfg, buffer);
    } else if (command == "compare") {
      code = cmd_compare(cfg, buffer);
    } else if (command == "noise-check") {
      code = cmd_noise_check(cfg, opts.seed, buffer);
    } else if (command == "superpose") {
      code = cmd_superpose(cfg, buffer);
    } else {
      err << "unknown command '" << command << "'\n";
      return kConfigError;
    }
    if (opts.out_path) {
      write_atomically(*opts.out_path, buffer.str());
    } else {
      out << buffer.str();
    }
    return code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const TruncationError& e) {
    err << "truncation error: " << e.what() << '\n';
    return kTruncationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

}  // namespace cavitylab::cli
