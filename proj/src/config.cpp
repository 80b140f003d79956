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

#include "cavitylab/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "cavitylab/errors.hpp"

namespace cavitylab {

using nlohmann::json;

std::string_view to_string(Engine e) noexcept {
  switch (e) {
    case Engine::Analytic: return "analytic";
    case Engine::Moments: return "moments";
    case Engine::Oracle: return "oracle";
  }
  return "?";
}

Engine parse_engine(std::string_view name) {
  if (name == "analytic") return Engine::Analytic;
  if (name == "moments") return Engine::Moments;
  if (name == "oracle") return Engine::Oracle;
  throw ConfigError("unknown engine '" + std::string(name) + "'");
}

std::string_view to_string(SweepAxis a) noexcept {
  switch (a) {
    case SweepAxis::Epsilon: return "epsilon";
    case SweepAxis::G: return "g";
    case SweepAxis::Kappa: return "kappa";
  }
  return "?";
}

RawParams RawParams::with(SweepAxis axis, double value) const {
  RawParams out = *this;
  switch (axis) {
    case SweepAxis::Epsilon: out.epsilon = value; break;
    case SweepAxis::G: out.g = value; break;
    case SweepAxis::Kappa: out.kappa = value; break;
  }
  return out;
}

ModelParams RunConfig::model() const {
  if (!params) throw ConfigError("config must define \"g\", \"kappa\" and \"epsilon\"");
  return params->validated();
}

namespace {

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError("unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
}

double number(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

std::optional<double> optional_number(const json& obj, const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  return number(obj, key);
}

std::int64_t integer(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("\"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

std::complex<double> complex_pair(const json& v, const char* what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(std::string(what) + " must be a number or a [re, im] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<Engine> parse_engines(const json& v) {
  if (!v.is_array() || v.empty()) throw ConfigError("\"engines\" must be a non-empty array");
  std::vector<Engine> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw ConfigError("engine names must be strings");
    const Engine engine = parse_engine(e.get<std::string>());
    if (std::find(out.begin(), out.end(), engine) != out.end()) throw ConfigError("duplicate engine");
    out.push_back(engine);
  }
  return out;
}

SweepSpec parse_sweep(const json& obj, const RawParams& base, const std::vector<Engine>& engines) {
  reject_unknown(obj, "\"sweep\"", {"axis", "values"});
  if (!obj.contains("axis") || !obj["axis"].is_string()) throw ConfigError("\"sweep.axis\" must be a string");
  const auto axis_name = obj["axis"].get<std::string>();
  SweepSpec spec{SweepAxis::Epsilon, {}, base, engines};
  if (axis_name == "epsilon") {
    spec.axis = SweepAxis::Epsilon;
  } else if (axis_name == "g") {
    spec.axis = SweepAxis::G;
  } else if (axis_name == "kappa") {
    spec.axis = SweepAxis::Kappa;
  } else {
    throw ConfigError("\"sweep.axis\" must be one of epsilon, g, kappa");
  }
  if (!obj.contains("values") || !obj["values"].is_array()) throw ConfigError("\"sweep.values\" must be an array");
  for (const auto& v : obj["values"]) {
    if (!v.is_number()) throw ConfigError("\"sweep.values\" entries must be numbers");
    spec.values.push_back(v.get<double>());
  }
  if (spec.values.empty()) throw ConfigError("\"sweep.values\" must not be empty");
  for (std::size_t i = 1; i < spec.values.size(); ++i) {
    if (!(spec.values[i] > spec.values[i - 1])) throw ConfigError("\"sweep.values\" must be strictly increasing");
  }
  for (double v : spec.values) {
    try {
      (void)base.with(spec.axis, v).validated();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("sweep value invalid: ") + e.what());
    }
  }
  return spec;
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }

  try {
    reject_unknown(doc, "config",
                   {"g", "kappa", "epsilon", "n_max", "edge_tolerance", "engines", "integrator", "noise", "sweep",
                    "superpose"});
    RunConfig cfg;

    const bool has_g = doc.contains("g"), has_kappa = doc.contains("kappa"), has_eps = doc.contains("epsilon");
    if (has_g || has_kappa || has_eps) {
      if (!(has_g && has_kappa && has_eps)) throw ConfigError("\"g\", \"kappa\" and \"epsilon\" are all required");
      cfg.params = RawParams{number(doc, "g"), number(doc, "kappa"), number(doc, "epsilon")};
      (void)cfg.params->validated();
    }

    int n_max = cfg.truncation.n_max;
    double edge_tolerance = cfg.truncation.edge_tolerance;
    if (doc.contains("n_max")) n_max = static_cast<int>(integer(doc, "n_max"));
    if (doc.contains("edge_tolerance")) edge_tolerance = number(doc, "edge_tolerance");
    cfg.truncation = validate_truncation(n_max, edge_tolerance);

    if (doc.contains("engines")) cfg.engines = parse_engines(doc["engines"]);

    if (doc.contains("integrator")) {
      const auto& obj = doc["integrator"];
      reject_unknown(obj, "\"integrator\"", {"dt", "tol", "max_time"});
      cfg.integrator = {optional_number(obj, "dt"), optional_number(obj, "tol"), optional_number(obj, "max_time")};
    }

    if (doc.contains("noise")) {
      const auto& obj = doc["noise"];
      reject_unknown(obj, "\"noise\"", {"dt", "steps", "trials"});
      if (obj.contains("dt")) cfg.noise.dt = number(obj, "dt");
      if (obj.contains("steps")) cfg.noise.steps = integer(obj, "steps");
      if (obj.contains("trials")) cfg.noise.trials = integer(obj, "trials");
      if (!(cfg.noise.dt > 0.0)) throw ConfigError("\"noise.dt\" must be > 0");
      if (cfg.noise.steps < 2) throw ConfigError("\"noise.steps\" must be >= 2");
      if (cfg.noise.trials < 2) throw ConfigError("\"noise.trials\" must be >= 2");
    }

    if (doc.contains("sweep")) {
      if (!cfg.params) throw ConfigError("a sweep needs base \"g\", \"kappa\" and \"epsilon\"");
      cfg.sweep = parse_sweep(doc["sweep"], *cfg.params, cfg.engines);
    }

    if (doc.contains("superpose")) {
      const auto& obj = doc["superpose"];
      reject_unknown(obj, "\"superpose\"", {"n_max", "states"});
      if (obj.contains("n_max")) {
        cfg.superpose.n_max = static_cast<int>(integer(obj, "n_max"));
        if (cfg.superpose.n_max < 1) throw ConfigError("\"superpose.n_max\" must be >= 1");
      }
      if (obj.contains("states")) {
        const auto& states = obj["states"];
        if (!states.is_array() || states.empty()) throw ConfigError("\"superpose.states\" must be a non-empty array");
        cfg.superpose.states.clear();
        for (const auto& s : states) {
          reject_unknown(s, "superpose state", {"a", "b"});
          if (!s.contains("a") || !s.contains("b")) throw ConfigError("superpose state needs \"a\" and \"b\"");
          cfg.superpose.states.push_back({complex_pair(s["a"], "\"a\""), complex_pair(s["b"], "\"b\"")});
        }
      }
    }
    return cfg;
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace cavitylab
