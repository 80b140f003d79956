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

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "cavitylab/errors.hpp"
#include "cavitylab/stochastic.hpp"

using namespace cavitylab;
using namespace cavitylab::stochastic;

TEST(NoisePath, VarianceMatchesKappaOverDt) {
  const double kappa = 2.0, dt = 0.01;
  const auto path = sample_noise_path(kappa, dt, 100000, 7);
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& f : path.samples) {
    const double x = std::norm(f);
    sum += x;
    sum_sq += x * x;
  }
  const double n = static_cast<double>(path.samples.size());
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  EXPECT_NEAR(mean, kappa / dt, 3 * se);
  EXPECT_LT(se, 1.0);
}

TEST(NoisePath, ZeroKappaIsSilent) {
  const auto path = sample_noise_path(0.0, 0.01, 1000, 3);
  for (const auto& f : path.samples) EXPECT_EQ(f, std::complex<double>(0.0));
}

TEST(NoisePath, DeterministicPerSeed) {
  const auto a = sample_noise_path(1.0, 0.1, 500, 11);
  const auto b = sample_noise_path(1.0, 0.1, 500, 11);
  const auto c = sample_noise_path(1.0, 0.1, 500, 12);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_NE(a.samples, c.samples);
}

TEST(NoisePath, RejectsBadArguments) {
  EXPECT_THROW(sample_noise_path(1.0, 0.0, 10, 1), DomainError);
  EXPECT_THROW(sample_noise_path(1.0, 0.1, 0, 1), DomainError);
  EXPECT_THROW(sample_noise_path(-1.0, 0.1, 10, 1), DomainError);
}

TEST(Mix64, SpreadsAdjacentSeeds) {
  EXPECT_NE(mix64(1), mix64(2));
  EXPECT_NE(mix64(0), 0u);
}

TEST(Correlation, MidpointRecoversHalfKappa) {
  for (double kappa : {2.0, 4.0}) {
    const auto p = validate_params(0.0, kappa, 1.0);
    const auto r = estimate_correlation(p, MonteCarloConfig{});
    EXPECT_EQ(r.expected, kappa / 2);
    EXPECT_LE(std::abs(r.midpoint.value - kappa / 2), 3 * r.midpoint.std_error) << kappa;
    EXPECT_LE(std::abs(r.ito.value), 3 * r.ito.std_error) << kappa;
    EXPECT_LE(std::abs(r.full.value - kappa), 3 * r.full.std_error) << kappa;
    // The three sampling choices are resolved from each other.
    EXPECT_GT(kappa / 2, 10 * r.midpoint.std_error);
  }
}

TEST(Correlation, NoiselessControlIsExactlyZero) {
  MonteCarloConfig cfg;
  cfg.noiseless = true;
  const auto r = estimate_correlation(validate_params(0.0, 2.0, 1.0), cfg);
  EXPECT_EQ(r.midpoint.value, 0.0);
  EXPECT_EQ(r.ito.value, 0.0);
  EXPECT_EQ(r.full.value, 0.0);
}

TEST(Correlation, IndependentOfStepSize) {
  const auto p = validate_params(0.0, 2.0, 1.0);
  for (double dt : {2e-3, 5e-4}) {
    MonteCarloConfig cfg;
    cfg.dt = dt;
    cfg.steps = static_cast<std::int64_t>(std::llround(10.0 / dt));
    const auto r = estimate_correlation(p, cfg);
    EXPECT_LE(std::abs(r.midpoint.value - 1.0), 3 * r.midpoint.std_error) << dt;
  }
}

TEST(Correlation, RequiresTransientToClear) {
  const auto p = validate_params(0.0, 2.0, 1.0);
  MonteCarloConfig cfg;
  cfg.steps = 4000;  // 4 < 10 / kappa = 5
  EXPECT_THROW(estimate_correlation(p, cfg), DomainError);
  cfg.steps = 5000;
  EXPECT_NO_THROW(estimate_correlation(p, cfg));
  cfg.trials = 1;
  EXPECT_THROW(estimate_correlation(p, cfg), DomainError);
}

TEST(Correlation, DeterministicForSeed) {
  const auto p = validate_params(0.0, 2.0, 1.0);
  MonteCarloConfig cfg;
  cfg.trials = 10;
  const auto a = estimate_correlation(p, cfg);
  const auto b = estimate_correlation(p, cfg);
  EXPECT_EQ(a.midpoint.value, b.midpoint.value);
  cfg.seed = 2;
  EXPECT_NE(estimate_correlation(p, cfg).midpoint.value, a.midpoint.value);
}

TEST(MeanField, TendsToTwoEpsOverKappa) {
  const auto r = estimate_mean_field(validate_params(0.0, 2.0, 1.0), MonteCarloConfig{});
  EXPECT_LE(std::abs(r.mean.real() - 1.0), 3 * r.std_error);
  EXPECT_LT(std::abs(r.mean.imag()), 0.1);
}

TEST(MeanField, UndrivenIsZeroAndDoublingDoubles) {
  const auto zero = estimate_mean_field(validate_params(0.0, 2.0, 0.0), MonteCarloConfig{});
  EXPECT_LE(std::abs(zero.mean.real()), 3 * zero.std_error);
  // Same noise realizations, so the difference is exactly the deterministic shift.
  const auto one = estimate_mean_field(validate_params(0.0, 2.0, 1.0), MonteCarloConfig{});
  const auto two = estimate_mean_field(validate_params(0.0, 2.0, 2.0), MonteCarloConfig{});
  EXPECT_NEAR(two.mean.real() - one.mean.real(), one.mean.real() - zero.mean.real(), 1e-9);
  EXPECT_NEAR(two.mean.real() - one.mean.real(), 1.0, 0.01);
}

TEST(MeanField, RejectsCoupledAtom) {
  EXPECT_THROW(estimate_mean_field(validate_params(0.5, 2.0, 1.0), MonteCarloConfig{}), DomainError);
}
