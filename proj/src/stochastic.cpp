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

#include "cavitylab/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cavitylab/errors.hpp"

namespace cavitylab::stochastic {

namespace {

class NoiseSource {
 public:
  NoiseSource(double kappa, double dt, std::uint64_t seed)
      : engine_(seed), scale_(std::sqrt(kappa / dt / 2.0)) {}

  std::complex<double> next() {
    const double u = normal_(engine_);
    const double v = normal_(engine_);
    return {scale_ * u, scale_ * v};
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  double scale_;
};

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  Estimate finish() const {
    const double mean = sum / static_cast<double>(n);
    const double var = (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
    return {mean, std::sqrt(std::max(var, 0.0) / static_cast<double>(n))};
  }
};

void check_config(const ModelParams& p, const MonteCarloConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw DomainError("dt must be > 0");
  if (cfg.steps < 2) throw DomainError("steps must be >= 2");
  if (cfg.trials < 2) throw DomainError("trials must be >= 2");
  if (static_cast<double>(cfg.steps) * cfg.dt < 10.0 / p.kappa()) {
    throw DomainError("steps*dt must be >= 10/kappa so the transient is cleared");
  }
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

NoisePath sample_noise_path(double kappa, double dt, std::int64_t steps, std::uint64_t seed) {
  if (!(dt > 0.0)) throw DomainError("dt must be > 0");
  if (steps < 1) throw DomainError("steps must be >= 1");
  if (kappa < 0.0) throw DomainError("kappa must be >= 0");
  NoisePath path{dt, {}, seed};
  path.samples.reserve(static_cast<std::size_t>(steps));
  NoiseSource source(kappa, dt, seed);
  for (std::int64_t k = 0; k < steps; ++k) path.samples.push_back(source.next());
  return path;
}

CorrelationReport estimate_correlation(const ModelParams& p, const MonteCarloConfig& cfg) {
  check_config(p, cfg);
  const double kappa = p.kappa();
  const double eps = p.epsilon();
  const double dt = cfg.dt;
  const std::int64_t burn_in = cfg.steps / 2;

  Accumulator midpoint, ito, full;
  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    NoiseSource source(kappa, dt, mix64(cfg.seed + static_cast<std::uint64_t>(trial)));
    std::complex<double> a = 0.0;
    double sum_mid = 0.0, sum_ito = 0.0, sum_full = 0.0;
    for (std::int64_t k = 0; k < cfg.steps; ++k) {
      const std::complex<double> f = cfg.noiseless ? std::complex<double>(0.0) : source.next();
      const std::complex<double> drift = -0.5 * kappa * a + eps;
      const std::complex<double> mid = a + 0.5 * dt * (drift + f);
      const std::complex<double> next = a + dt * drift + dt * f;
      if (k >= burn_in) {
        sum_ito += (a * std::conj(f)).real();
        sum_mid += (mid * std::conj(f)).real();
        sum_full += (next * std::conj(f)).real();
      }
      a = next;
    }
    const auto samples = static_cast<double>(cfg.steps - burn_in);
    ito.add(sum_ito / samples);
    midpoint.add(sum_mid / samples);
    full.add(sum_full / samples);
  }
  return {midpoint.finish(), ito.finish(), full.finish(), kappa / 2.0};
}

MeanFieldEstimate estimate_mean_field(const ModelParams& p, const MonteCarloConfig& cfg) {
  if (p.g() != 0.0) throw DomainError("mean-field path cannot represent the atom; requires g == 0");
  check_config(p, cfg);
  const double kappa = p.kappa();
  const double eps = p.epsilon();
  const double dt = cfg.dt;
  const std::int64_t burn_in = cfg.steps / 2;

  Accumulator re;
  double im_sum = 0.0;
  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    NoiseSource source(kappa, dt, mix64(cfg.seed + static_cast<std::uint64_t>(trial)));
    std::complex<double> a = 0.0, acc = 0.0;
    for (std::int64_t k = 0; k < cfg.steps; ++k) {
      const std::complex<double> f = cfg.noiseless ? std::complex<double>(0.0) : source.next();
      a += dt * (-0.5 * kappa * a + eps) + dt * f;
      if (k >= burn_in) acc += a;
    }
    acc /= static_cast<double>(cfg.steps - burn_in);
    re.add(acc.real());
    im_sum += acc.imag();
  }
  const Estimate e = re.finish();
  return {{e.value, im_sum / static_cast<double>(cfg.trials)}, e.std_error};
}

}  // namespace cavitylab::stochastic
