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

// Monte Carlo check of the reservoir-noise bookkeeping for the damped, driven
// cavity amplitude, using a c-number stand-in for the noise operator.
//
// The amplitude follows the Euler scheme
//   a[k+1] = a[k] + dt (-kappa/2 a[k] + eps) + dt F[k],
// with complex Gaussian F[k] of variance E|F[k]|^2 = kappa / dt. The atomic
// term is left out; it is uncorrelated with the noise by assumption.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cavitylab/model.hpp"

namespace cavitylab::stochastic {

/// 64-bit finalizer used to derive per-trial seeds: seed_k = mix64(seed + k).
std::uint64_t mix64(std::uint64_t x) noexcept;

struct NoisePath {
  double dt;
  std::vector<std::complex<double>> samples;
  std::uint64_t seed;
};

/// F[k] = sqrt(kappa/dt) (u + i v) / sqrt(2), u, v standard normal.
/// Deterministic for a given seed; kappa == 0 yields an all-zero path.
NoisePath sample_noise_path(double kappa, double dt, std::int64_t steps, std::uint64_t seed);

struct MonteCarloConfig {
  double dt = 1e-3;
  std::int64_t steps = 10000;
  std::int64_t trials = 200;
  std::uint64_t seed = 1;
  /// Disable the noise source entirely (control run).
  bool noiseless = false;
};

struct Estimate {
  double value;
  double std_error;
};

/// <a F^dag> estimated with three choices of where the amplitude is sampled
/// relative to the noise increment:
///   ito      a[k]                              -> 0
///   midpoint a[k] + dt/2 (drift + F[k])        -> kappa / 2
///   full     a[k+1]                            -> kappa
/// Each trial averages Re(a F*) over the second half of its path (the first
/// half is burn-in); value and standard error are over trials.
struct CorrelationReport {
  Estimate midpoint;
  Estimate ito;
  Estimate full;
  double expected;  // kappa / 2
};

/// Throws DomainError if trials < 2, steps < 2, dt <= 0, or steps*dt < 10/kappa.
CorrelationReport estimate_correlation(const ModelParams& p, const MonteCarloConfig& cfg);

struct MeanFieldEstimate {
  std::complex<double> mean;
  double std_error;  // of the real part
};

/// Long-time trial average of a[k]; tends to 2 eps / kappa.
/// Throws DomainError unless g == 0.
MeanFieldEstimate estimate_mean_field(const ModelParams& p, const MonteCarloConfig& cfg);

}  // namespace cavitylab::stochastic
