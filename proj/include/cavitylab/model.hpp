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

#include <cmath>
#include <string>
#include <string_view>

#include "cavitylab/errors.hpp"

namespace cavitylab {

/// Physical constants of a resonantly driven, damped cavity mode coupled to
/// one two-level atom.
///
/// All rates are dimensionless multiples of an arbitrary time unit. The drive
/// enters only through the real amplitude epsilon (coupling constant times the
/// c-number drive field). Instances are immutable and can only be obtained
/// through validate_params(), so every live value satisfies
/// kappa > 0, g >= 0, epsilon >= 0, all finite.
template <typename Real>
class BasicModelParams {
 public:
  using Scalar = Real;

  Real g() const noexcept { return g_; }
  Real kappa() const noexcept { return kappa_; }
  Real epsilon() const noexcept { return epsilon_; }

  /// Cavity-induced atomic decay constant 4 g^2 / kappa. Recomputed on every
  /// call so it can never drift from (g, kappa).
  Real gamma_c() const noexcept { return Real(4) * g_ * g_ / kappa_; }

  friend bool operator==(const BasicModelParams&, const BasicModelParams&) = default;

  template <typename R>
  friend BasicModelParams<R> validate_params(R g, R kappa, R epsilon);

 private:
  BasicModelParams(Real g, Real kappa, Real epsilon) : g_(g), kappa_(kappa), epsilon_(epsilon) {}

  Real g_;
  Real kappa_;
  Real epsilon_;
};

using ModelParams = BasicModelParams<double>;

template <typename Real>
BasicModelParams<Real> validate_params(Real g, Real kappa, Real epsilon) {
  using std::isfinite;
  if (!isfinite(g) || !isfinite(kappa) || !isfinite(epsilon)) {
    throw DomainError("model parameters must be finite");
  }
  if (!(kappa > Real(0))) throw DomainError("kappa must be > 0");
  if (g < Real(0)) throw DomainError("g must be >= 0");
  if (epsilon < Real(0)) throw DomainError("epsilon must be >= 0");
  return BasicModelParams<Real>(g, kappa, epsilon);
}

/// Which limiting case a parameter point falls into.
enum class RegimeLabel {
  FreeMode,       // g == 0
  VacuumCoupled,  // g > 0, epsilon == 0
  DrivenCoupled,  // g > 0, epsilon > 0
};

template <typename Real>
RegimeLabel regime_report(const BasicModelParams<Real>& p) noexcept {
  if (p.g() == Real(0)) return RegimeLabel::FreeMode;
  if (p.epsilon() == Real(0)) return RegimeLabel::VacuumCoupled;
  return RegimeLabel::DrivenCoupled;
}

inline std::string_view to_string(RegimeLabel r) noexcept {
  switch (r) {
    case RegimeLabel::FreeMode: return "FreeMode";
    case RegimeLabel::VacuumCoupled: return "VacuumCoupled";
    case RegimeLabel::DrivenCoupled: return "DrivenCoupled";
  }
  return "?";
}

/// Fock-space cutoff for the exact oracle.
struct TruncationSpec {
  int n_max = 24;
  double edge_tolerance = 1e-8;

  friend bool operator==(const TruncationSpec&, const TruncationSpec&) = default;
};

inline TruncationSpec validate_truncation(int n_max, double edge_tolerance) {
  if (n_max < 2) throw DomainError("n_max must be >= 2");
  if (!(edge_tolerance > 0.0 && edge_tolerance < 1.0)) {
    throw DomainError("edge_tolerance must lie in (0, 1)");
  }
  return TruncationSpec{n_max, edge_tolerance};
}

}  // namespace cavitylab
