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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

#include "cavitylab/errors.hpp"
#include "cavitylab/model.hpp"

namespace cavitylab::moments {

/// Expectation values evolved by the closed moment equations. <eta_b> is
/// carried implicitly as 1 - eta_a.
template <typename Real>
struct MomentState {
  std::complex<Real> sigma_mean{};
  Real eta_a{};
  Real aa_dag{};
  Real adag_a{};

  /// Atom in the lower level, cavity in vacuum.
  static MomentState ground() { return {std::complex<Real>(0), Real(0), Real(1), Real(0)}; }

  bool all_finite() const {
    using std::isfinite;
    return isfinite(sigma_mean.real()) && isfinite(sigma_mean.imag()) && isfinite(eta_a) &&
           isfinite(aa_dag) && isfinite(adag_a);
  }

  Real max_abs() const {
    using std::abs;
    return std::max({abs(sigma_mean), abs(eta_a), abs(aa_dag), abs(adag_a)});
  }

  MomentState& operator+=(const MomentState& o) {
    sigma_mean += o.sigma_mean;
    eta_a += o.eta_a;
    aa_dag += o.aa_dag;
    adag_a += o.adag_a;
    return *this;
  }
  MomentState& operator*=(Real s) {
    sigma_mean *= s;
    eta_a *= s;
    aa_dag *= s;
    adag_a *= s;
    return *this;
  }
  friend MomentState operator+(MomentState a, const MomentState& b) { return a += b; }
  friend MomentState operator*(Real s, MomentState a) { return a *= s; }
};

template <typename Real>
struct IntegratorConfig {
  Real dt;
  Real tol;
  Real max_time;
};

template <typename Real>
IntegratorConfig<Real> validate_integrator(Real dt, Real tol, Real max_time) {
  using std::isfinite;
  if (!(dt > Real(0)) || !isfinite(dt)) throw DomainError("integrator dt must be > 0");
  if (!(tol > Real(0)) || !isfinite(tol)) throw DomainError("integrator tol must be > 0");
  if (!(max_time >= Real(10) * dt) || !isfinite(max_time)) {
    throw DomainError("integrator max_time must be >= 10*dt");
  }
  return {dt, tol, max_time};
}

/// dt = 0.01 / max(kappa, gamma_c, eps), tol = 1e-10 max(kappa, 1).
///
/// The horizon covers 100 e-folds of the slowest relaxation rate
/// min(kappa, gamma_c / 2), capped at 2e7 steps.
template <typename Real>
IntegratorConfig<Real> default_integrator(const BasicModelParams<Real>& p) {
  const Real fastest = std::max({p.kappa(), p.gamma_c(), p.epsilon()});
  const Real dt = Real(0.01) / fastest;
  const Real tol = Real(1e-10) * std::max(p.kappa(), Real(1));
  Real slowest = p.kappa();
  if (p.g() > Real(0)) slowest = std::min(slowest, p.gamma_c() / Real(2));
  const Real horizon = std::min(Real(100) / slowest, Real(2e7) * dt);
  return validate_integrator(dt, tol, std::max(horizon, Real(10) * dt));
}

/// Right-hand side of the closed moment system.
template <typename Real>
MomentState<Real> moment_derivatives(const MomentState<Real>& s, const BasicModelParams<Real>& p) {
  const Real kappa = p.kappa();
  const Real gc = p.gamma_c();
  const Real eps = p.epsilon();
  const Real drive = Real(2) * p.g() * eps / kappa;  // 2 g eps / kappa
  const Real coherence = Real(2) * s.sigma_mean.real();  // <sigma + sigma^dag>
  const Real free_photons = Real(4) * eps * eps / kappa;

  MomentState<Real> d;
  d.sigma_mean = -(gc / Real(2)) * s.sigma_mean + std::complex<Real>(drive * (Real(1) - Real(2) * s.eta_a));
  d.eta_a = -gc * s.eta_a + drive * coherence;
  d.aa_dag = -kappa * s.aa_dag + gc * (Real(1) - s.eta_a) + free_photons - Real(2) * drive * coherence + kappa;
  d.adag_a = -kappa * s.adag_a + gc * s.eta_a + free_photons - Real(2) * drive * coherence;
  return d;
}

template <typename Real>
MomentState<Real> rk4_step(const MomentState<Real>& s, const BasicModelParams<Real>& p, Real dt) {
  const Real half = dt / Real(2);
  const auto k1 = moment_derivatives(s, p);
  const auto k2 = moment_derivatives(s + half * k1, p);
  const auto k3 = moment_derivatives(s + half * k2, p);
  const auto k4 = moment_derivatives(s + dt * k3, p);
  return s + (dt / Real(6)) * (k1 + Real(2) * k2 + Real(2) * k3 + k4);
}

template <typename Real>
struct IntegrationResult {
  MomentState<Real> state;
  bool converged;
  Real elapsed;
  std::int64_t steps;
};

/// Fixed-step RK4 until the derivative max-norm drops below cfg.tol or
/// cfg.max_time is reached. Throws NumericalError on a non-finite state.
template <typename Real>
IntegrationResult<Real> integrate_to_steady_state(const BasicModelParams<Real>& p, MomentState<Real> state,
                                                  const IntegratorConfig<Real>& cfg) {
  if (!state.all_finite()) throw NumericalError("initial moment state is not finite");
  const auto max_steps = static_cast<std::int64_t>(std::floor(cfg.max_time / cfg.dt));
  std::int64_t step = 0;
  for (;;) {
    if (moment_derivatives(state, p).max_abs() < cfg.tol) {
      return {state, true, static_cast<Real>(step) * cfg.dt, step};
    }
    if (step >= max_steps) return {state, false, static_cast<Real>(step) * cfg.dt, step};
    state = rk4_step(state, p, cfg.dt);
    ++step;
    if (!state.all_finite()) throw NumericalError("moment state became non-finite");
  }
}

}  // namespace cavitylab::moments
