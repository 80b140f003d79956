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
#include <random>

#include <gtest/gtest.h>

#include "cavitylab/analytic.hpp"
#include "cavitylab/lindblad.hpp"
#include "oracles/oracles.hpp"

using namespace cavitylab;
using namespace cavitylab::lindblad;
using M = ComplexMatrix<double>;
using C = std::complex<double>;

namespace {

const double kEps = std::sqrt(0.5);

TruncationSpec trunc(int n_max, double tol = 1e-8) { return validate_truncation(n_max, tol); }

}  // namespace

TEST(Operators, LadderDefinition) {
  const auto ops = build_operators<double>(trunc(2));
  ASSERT_EQ(ops.dim(), 6);
  for (int atom = 0; atom < 2; ++atom)
    for (int n = 1; n <= 2; ++n) EXPECT_EQ(ops.a(atom * 3 + n - 1, atom * 3 + n), C(std::sqrt(double(n))));
  EXPECT_EQ((ops.a.cwiseAbs().array() > 0).count(), 4);
  const M one = annihilation<double>(1);
  EXPECT_EQ((one.cwiseAbs().array() > 0).count(), 1);
  EXPECT_EQ(one(0, 1), C(1.0));
}

TEST(Operators, TwoLevelAlgebra) {
  const auto ops = build_operators<double>(trunc(4));
  EXPECT_EQ((ops.sigma * ops.sigma).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((ops.sigma * ops.sigma_dag + ops.sigma_dag * ops.sigma - ops.identity).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((ops.eta_a + ops.eta_b - ops.identity).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((ops.sigma_dag * ops.sigma - ops.eta_a).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Operators, TruncatedCommutatorEdge) {
  for (int n_max : {2, 5, 9}) {
    const M a = annihilation<double>(n_max);
    const M comm = commutator<double>(a, M(a.adjoint()));
    for (int n = 0; n < n_max; ++n) EXPECT_NEAR(comm(n, n).real(), 1.0, 1e-14);
    EXPECT_NEAR(comm(n_max, n_max).real(), -double(n_max), 1e-13);
    M off = comm;
    off.diagonal().setZero();
    EXPECT_EQ(off.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Liouvillian, SuperoperatorMatchesGenerator) {
  std::mt19937_64 rng(1);
  const auto p = validate_params(0.7, 1.3, 0.9);
  const auto ops = build_operators<double>(trunc(4));
  const M L = build_liouvillian(p, ops);
  const M h = hamiltonian(p, ops);
  for (int i = 0; i < 5; ++i) {
    const M rho = oracles::random_hermitian(int(ops.dim()), rng);
    const M direct = apply_generator<double>(h, ops.a, p.kappa(), rho);
    const M via_super = unvectorize<double>(L * vectorize<double>(rho), ops.dim());
    EXPECT_LT((direct - via_super).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Liouvillian, PreservesTraceAndHermiticity) {
  std::mt19937_64 rng(4);
  const auto p = validate_params(1.0, 2.0, kEps);
  const auto ops = build_operators<double>(trunc(6));
  const M L = build_liouvillian(p, ops);
  for (int i = 0; i < 20; ++i) {
    const M rho = oracles::random_hermitian(int(ops.dim()), rng);
    const M out = unvectorize<double>(L * vectorize<double>(rho), ops.dim());
    EXPECT_LT(std::abs(out.trace()), 1e-12 * rho.cwiseAbs().maxCoeff() * ops.dim());
    EXPECT_LT((out - out.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Liouvillian, VacuumTimesAtomicDiagonalIsStationaryWithoutCoupling) {
  const auto p = validate_params(0.0, 2.0, 0.0);
  const auto ops = build_operators<double>(trunc(4));
  const M L = build_liouvillian(p, ops);
  M rho = M::Zero(ops.dim(), ops.dim());
  rho(0, 0) = 0.3;  // |a,0>
  rho(5, 5) = 0.7;  // |b,0>
  EXPECT_EQ((L * vectorize<double>(rho)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SteadyState, FreeDrivenModeIsCoherent) {
  // Driven damped oscillator: coherent state with amplitude 2 eps / kappa.
  const auto sol = solve_oracle(validate_params(0.0, 2.0, 1.0), trunc(12));
  EXPECT_NEAR(sol.report.nbar, 1.0, 1e-8);
  EXPECT_NEAR(sol.report.commutator_expectation, 1.0, 1e-6);
  EXPECT_EQ(sol.report.eta_a, 0.0);  // atom stays in its initial lower level
  EXPECT_EQ(sol.report.eta_b, 1.0);
  const auto ops = build_operators<double>(trunc(12));
  const C mean_a = trace_product<double>(sol.rho.matrix(), ops.a);
  EXPECT_NEAR(mean_a.real(), 1.0, 1e-8);
  EXPECT_NEAR(mean_a.imag(), 0.0, 1e-12);
}

TEST(SteadyState, VacuumCoupledIsGroundState) {
  const auto p = validate_params(1.0, 2.0, 0.0);
  const auto ops = build_operators<double>(trunc(8));
  const auto rho = steady_state(build_liouvillian(p, ops));
  const int ground = 9;  // |b, 0>
  EXPECT_NEAR(rho.matrix()(ground, ground).real(), 1.0, 1e-12);
  const auto r = expectations(rho, ops, trunc(8));
  EXPECT_NEAR(r.nbar, 0.0, 1e-12);
  EXPECT_NEAR(r.eta_b, 1.0, 1e-12);
}

TEST(SteadyState, DegenerateManifoldIsReported) {
  EXPECT_THROW(steady_state(build_liouvillian(validate_params(0.0, 2.0, 0.0), trunc(6))), SingularSystemError);
  EXPECT_THROW(steady_state(build_liouvillian(validate_params(0.0, 2.0, 1.0), trunc(12))), SingularSystemError);
}

TEST(SteadyState, DensityMatrixInvariants) {
  const auto sol = solve_oracle(validate_params(1.0, 2.0, kEps), trunc(16));
  const M& rho = sol.rho.matrix();
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_LT((rho - rho.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_GE(sol.rho.min_eigenvalue(), -1e-10);
  EXPECT_NEAR(sol.report.eta_a + sol.report.eta_b, 1.0, 1e-10);
}

TEST(DensityMatrix, RejectsInvalid) {
  M m = M::Identity(4, 4);
  EXPECT_THROW(DensityMatrix<double>::from_matrix(m), NumericalError);  // trace 4
  m /= 4.0;
  EXPECT_NO_THROW(DensityMatrix<double>::from_matrix(m));
  M nonherm = m;
  nonherm(0, 1) = C(0.1, 0.0);
  EXPECT_THROW(DensityMatrix<double>::from_matrix(nonherm), NumericalError);
  M negative = M::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix<double>::from_matrix(negative), NumericalError);
}

// Frozen from tests/oracles/lindblad_reference.py (numpy / LAPACK).
TEST(Expectations, MatchesIndependentReference) {
  const auto p = validate_params(1.0, 2.0, kEps);
  const auto r = solve_oracle(p, trunc(24)).report;
  EXPECT_NEAR(r.eta_a, 0.35264082771941596, 1e-10);
  EXPECT_NEAR(r.sigma.real(), 0.39995733382679383, 1e-10);
  EXPECT_NEAR(r.aa_dag, 1.2171874570657832, 1e-10);
  EXPECT_NEAR(r.adag_a, 0.21718745706578332, 1e-10);
  EXPECT_NEAR(r.commutator_expectation, 1.0, 1e-6);
  EXPECT_LT(r.edge_population, 1e-8);
}

TEST(Expectations, WeakCouplingCrossCheck) {
  const auto p = validate_params(0.1, 2.0, 0.1);
  const auto r = solve_oracle(p, trunc(24)).report;
  const double nbar = analytic::cavity_steady_state(p).nbar;
  EXPECT_LT(std::abs(r.adag_a - nbar), 0.05 * nbar);
  // Regression: actual discrepancy from the independent reference solve.
  EXPECT_NEAR(r.adag_a, 0.0066449638985390577, 1e-11);
  EXPECT_NEAR(std::abs(r.adag_a - nbar), 2.1702768127610308e-05, 1e-11);
}

TEST(Expectations, TruncationErrorWhenEdgeIsPopulated) {
  // Coherent amplitude 2 eps / kappa = 3 does not fit below n_max = 10.
  const auto p = validate_params(0.0, 2.0, 3.0);
  try {
    (void)solve_oracle(p, trunc(10));
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_GT(e.edge_population(), 1e-8);
  }
  EXPECT_NO_THROW((void)solve_oracle(p, trunc(40)));
}

TEST(TruncationGuard, PoissonTails) {
  const auto vac = DensityMatrix<double>::pure(coherent_state<double>(0.0, 10));
  const auto g0 = truncation_guard(vac, trunc(10));
  EXPECT_TRUE(g0.ok);
  EXPECT_EQ(g0.edge_population, 0.0);

  const auto at10 = truncation_guard(DensityMatrix<double>::pure(coherent_state<double>(3.0, 10)), trunc(10));
  EXPECT_FALSE(at10.ok);
  EXPECT_NEAR(at10.edge_population, oracles::truncated_poisson_top(9.0, 10), 1e-12);
  EXPECT_NEAR(at10.edge_population, 0.16796322629158641, 1e-12);

  // Mean 9 leaves 1.97e-8 on level 30, so the 1e-8 default only clears at 32.
  const auto at30 = truncation_guard(DensityMatrix<double>::pure(coherent_state<double>(3.0, 30)), trunc(30));
  EXPECT_NEAR(at30.edge_population, oracles::truncated_poisson_top(9.0, 30), 1e-15);
  EXPECT_FALSE(at30.ok);
  EXPECT_TRUE(truncation_guard(DensityMatrix<double>::pure(coherent_state<double>(3.0, 30)), trunc(30, 1e-7)).ok);
  const auto at32 = truncation_guard(DensityMatrix<double>::pure(coherent_state<double>(3.0, 32)), trunc(32));
  EXPECT_TRUE(at32.ok);
  EXPECT_LT(at32.edge_population, 1e-8);
}

TEST(VerifyMomentEquations, RandomGuardedStates) {
  std::mt19937_64 rng(42);
  const auto p = validate_params(1.0, 2.0, kEps);
  const auto ops = build_operators<double>(trunc(6));
  for (int i = 0; i < 100; ++i) {
    const auto rho = oracles::random_guarded_state(6, rng);
    ASSERT_TRUE(truncation_guard(rho, trunc(6)).ok);
    const auto r = verify_moment_equations(rho, p, ops);
    EXPECT_LT(r.max_residual, 1e-10);
    EXPECT_GT(std::abs(r.sigma_formula), 1e-6);  // non-trivial on both sides
  }
}

TEST(VerifyMomentEquations, ZeroCouplingBothSidesVanish) {
  std::mt19937_64 rng(8);
  const auto p = validate_params(0.0, 2.0, 1.0);
  const auto ops = build_operators<double>(trunc(5));
  const auto r = verify_moment_equations(oracles::random_guarded_state(5, rng), p, ops);
  EXPECT_LT(std::abs(r.sigma_generator), 1e-14);
  EXPECT_EQ(r.sigma_formula, C(0.0));
  EXPECT_LT(std::abs(r.eta_generator), 1e-14);
  EXPECT_EQ(r.eta_formula, C(0.0));
}

TEST(VerifyMomentEquations, SteadyStateBothSidesNearZero) {
  const auto p = validate_params(1.0, 2.0, kEps);
  const auto ops = build_operators<double>(trunc(16));
  const auto rho = steady_state(build_liouvillian(p, ops));
  const auto r = verify_moment_equations(rho, p, ops);
  EXPECT_LT(std::abs(r.sigma_generator), 1e-10);
  EXPECT_LT(std::abs(r.sigma_formula), 1e-10);
  EXPECT_LT(std::abs(r.eta_generator), 1e-10);
  EXPECT_LT(std::abs(r.eta_formula), 1e-10);
}

TEST(OracleProperties, ExactCommutatorWithinEdgeBound) {
  for (double eps : {0.2, 0.7, 1.2}) {
    const auto spec = trunc(16, 1e-6);
    const auto r = solve_oracle(validate_params(1.0, 2.0, eps), spec).report;
    const double band = 10.0 * spec.edge_tolerance * spec.n_max;
    EXPECT_GE(r.commutator_expectation, 1.0 - band);
    EXPECT_LE(r.commutator_expectation, 1.0 + band);
    // Exact relation on the truncated space: tr(rho [a, a^dag]) = 1 - (n_max + 1) p_top.
    EXPECT_NEAR(r.commutator_expectation, 1.0 - (spec.n_max + 1) * r.edge_population, 1e-12);
  }
}

TEST(OracleProperties, ConvergenceInTruncation) {
  const auto p = validate_params(1.0, 2.0, 0.5);
  const auto lo = solve_oracle(p, trunc(12)).report;
  const auto hi = solve_oracle(p, trunc(16)).report;
  EXPECT_LT(std::abs(lo.nbar - hi.nbar), 1e-8);
}

TEST(OracleProperties, WeakCouplingDiscrepancyShrinks) {
  const double kappa = 2.0, eps = 1.0;
  double prev = 1e300;
  for (double ratio : {0.4, 0.2, 0.1, 0.05}) {
    const auto p = validate_params(ratio * kappa, kappa, eps);
    const double gap = std::abs(solve_oracle(p, trunc(16)).report.adag_a - analytic::cavity_steady_state(p).nbar);
    EXPECT_LT(gap, prev) << "g/kappa = " << ratio;
    prev = gap;
  }
}

TEST(TwoMode, CommutatorIdentityIsExact) {
  const auto r = two_mode_superposition_check<double>(3, {});
  EXPECT_EQ(r.max_deviation, 0.0);
  EXPECT_EQ(r.max_cross_commutator, 0.0);
}

TEST(TwoMode, CrossTermConditions) {
  const auto r = two_mode_superposition_check<double>(
      3, {{C(0.0), C(0.0)}, {C(0.3), C(0.3)}, {C(1.0), C(0.0, 1.0)}, {C(0.2, 0.4), C(0.2, 0.4)}});
  ASSERT_EQ(r.cases.size(), 4u);
  EXPECT_EQ(r.cases[0].matrix_cross_term, 0.0);
  EXPECT_LT(std::abs(r.cases[1].matrix_cross_term), 1e-12);
  EXPECT_LT(std::abs(r.cases[3].matrix_cross_term), 1e-12);
  EXPECT_GT(std::abs(r.cases[2].matrix_cross_term), 0.1);
  for (const auto& cs : r.cases) {
    // product states: matrix cross term equals the factorized formula
    EXPECT_NEAR(cs.matrix_cross_term, cs.formula.cross_term, 1e-12);
    EXPECT_NEAR(cs.c_photons, cs.formula.value, 1e-12);
  }
  EXPECT_TRUE(r.cases[1].formula.additive);
  EXPECT_FALSE(r.cases[2].formula.additive);
}
