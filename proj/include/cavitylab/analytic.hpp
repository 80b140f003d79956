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

// Closed-form steady states of the adiabatically eliminated moment equations.
//
// Every formula shares the denominator D = 8 eps^2 + kappa gamma_c, which is
// evaluated once per call.

#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include "cavitylab/errors.hpp"
#include "cavitylab/model.hpp"

namespace cavitylab::analytic {

/// Steady atomic populations and coherence.
///
/// At g == 0 the closed forms have no meaning (they were derived by dividing
/// through gamma_c), so the object is built in the decoupled state and the
/// accessors throw instead of returning a number.
template <typename Real>
class AtomicSteadyState {
 public:
  static AtomicSteadyState decoupled() { return AtomicSteadyState(); }
  static AtomicSteadyState coupled(Real eta_a, Real sigma) {
    AtomicSteadyState s;
    s.values_ = Values{eta_a, sigma};
    return s;
  }

  bool is_decoupled() const noexcept { return !values_.has_value(); }
  Real eta_a() const { return get().eta_a; }
  Real eta_b() const { return Real(1) - get().eta_a; }
  /// Real part of the steady coherence; exactly real for a real drive.
  Real sigma() const { return get().sigma; }

 private:
  struct Values {
    Real eta_a;
    Real sigma;
  };
  const Values& get() const {
    if (!values_) throw DomainError("atomic steady state is undefined for a decoupled atom (g == 0)");
    return *values_;
  }
  std::optional<Values> values_;
};

template <typename Real>
struct CavitySteadyState {
  Real aa_dag;                  // <a a^dag>
  Real adag_a;                  // <a^dag a>
  Real nbar;                    // mean photon number, independent closed form
  Real commutator_expectation;  // gamma_c^2 / D + 1
};

/// Statistics of one light mode entering a superposition c = a + i b.
template <typename Real>
struct ModeStats {
  std::complex<Real> mean_amplitude;
  Real mean_photons;
  Real commutator;
};

template <typename Real>
struct SuperposedPhotons {
  Real value;       // <c^dag c>
  Real cross_term;  // i(<a^dag><b> - <b^dag><a>), always real
  bool additive;    // cross term vanishes
};

namespace detail {
template <typename Real>
Real shared_denominator(const BasicModelParams<Real>& p) {
  const Real eps = p.epsilon();
  return Real(8) * eps * eps + p.kappa() * p.gamma_c();
}
}  // namespace detail

template <typename Real>
AtomicSteadyState<Real> atomic_steady_state(const BasicModelParams<Real>& p) {
  if (p.g() == Real(0)) return AtomicSteadyState<Real>::decoupled();
  const Real eps = p.epsilon();
  const Real d = detail::shared_denominator(p);
  return AtomicSteadyState<Real>::coupled(Real(4) * eps * eps / d, Real(4) * p.g() * eps / d);
}

template <typename Real>
CavitySteadyState<Real> cavity_steady_state(const BasicModelParams<Real>& p) {
  const Real eps = p.epsilon();
  const Real kappa = p.kappa();
  const Real gc = p.gamma_c();
  const Real free_photons = Real(4) * eps * eps / (kappa * kappa);

  CavitySteadyState<Real> out{};
  if (p.g() == Real(0)) {
    // Every atomic contribution carries a factor gamma_c.
    out.aa_dag = free_photons + Real(1);
    out.adag_a = free_photons;
    out.nbar = free_photons;
    out.commutator_expectation = Real(1);
    return out;
  }

  const Real d = detail::shared_denominator(p);
  const Real eta_a = Real(4) * eps * eps / d;
  const Real eta_b = Real(1) - eta_a;
  const Real ratio = gc / kappa;
  const Real coherence_term = ratio * (Real(8) * eps * eps / d);

  out.aa_dag = ratio * eta_b + free_photons - coherence_term + Real(1);
  out.adag_a = ratio * eta_a + free_photons - coherence_term;
  out.nbar = free_photons - ratio * (Real(4) * eps * eps / d);
  out.commutator_expectation = gc * gc / d + Real(1);
  return out;
}

/// Commutator of c = a + i b for commuting modes: the sum of the parts.
template <typename Real>
Real superposition_commutator(const ModeStats<Real>& a, const ModeStats<Real>& b) noexcept {
  return a.commutator + b.commutator;
}

/// Mean photon number of c = a + i b for uncorrelated modes.
///
/// Throws DomainError when `correlated` is set, since <a^dag b> does not
/// factorize and no value for it is available.
template <typename Real>
SuperposedPhotons<Real> superposition_mean_photons(const ModeStats<Real>& a, const ModeStats<Real>& b,
                                                   bool correlated) {
  if (correlated) throw DomainError("superposition_mean_photons: correlated modes have no closed form");
  const std::complex<Real> alpha = a.mean_amplitude;
  const std::complex<Real> beta = b.mean_amplitude;
  const std::complex<Real> i(0, 1);
  const std::complex<Real> cross = i * (std::conj(alpha) * beta - std::conj(beta) * alpha);
  const Real value = a.mean_photons + b.mean_photons + cross.real();
  return {value, cross.real(), cross.real() == Real(0)};
}

}  // namespace cavitylab::analytic
