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

// Exact steady states of the driven, damped Jaynes-Cummings model on a
// truncated atom (x) Fock space.
//
// Basis ordering is atom-major: index = atom * (n_max + 1) + n with atom 0 the
// upper level |a> and atom 1 the lower level |b>. Superoperators act on
// column-stacked density matrices, vec(X rho Y) = (Y^T (x) X) vec(rho).
//
// Memory: the superoperator is (2(n_max+1))^2 squared complex entries, i.e.
// about 100 MB at the default n_max = 24 and ~4.6 GB at n_max = 64.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cavitylab/analytic.hpp"
#include "cavitylab/errors.hpp"
#include "cavitylab/model.hpp"

namespace cavitylab::lindblad {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using DenseOperator = ComplexMatrix<Real>;

template <typename Real>
ComplexMatrix<Real> kron(const ComplexMatrix<Real>& x, const ComplexMatrix<Real>& y) {
  ComplexMatrix<Real> out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

/// out += scale * (x (x) y), without materializing the product.
template <typename Real>
void add_kron(ComplexMatrix<Real>& out, std::complex<Real> scale, const ComplexMatrix<Real>& x,
              const ComplexMatrix<Real>& y) {
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const std::complex<Real> c = scale * x(i, j);
      if (c == std::complex<Real>(0)) continue;
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) += c * y;
    }
}

template <typename Real, typename A, typename B>
ComplexMatrix<Real> commutator(const A& x, const B& y) {
  return x * y - y * x;
}

template <typename Real, typename A>
std::complex<Real> trace_product(const ComplexMatrix<Real>& rho, const A& op) {
  return (rho.array() * op.transpose().array()).sum();
}

/// Truncated annihilation operator on Fock levels 0..n_max.
template <typename Real>
ComplexMatrix<Real> annihilation(int n_max) {
  ComplexMatrix<Real> a = ComplexMatrix<Real>::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<Real>(n));
  return a;
}

/// Normalized truncated coherent state sum_n alpha^n / sqrt(n!) |n>.
template <typename Real>
ComplexVector<Real> coherent_state(std::complex<Real> alpha, int n_max) {
  ComplexVector<Real> v(n_max + 1);
  v(0) = 1;
  for (int n = 1; n <= n_max; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<Real>(n));
  return v / v.norm();
}

template <typename Real>
struct OperatorSet {
  int n_max;
  DenseOperator<Real> a, a_dag;
  DenseOperator<Real> sigma, sigma_dag;
  DenseOperator<Real> eta_a, eta_b;
  DenseOperator<Real> identity;

  Eigen::Index dim() const { return identity.rows(); }
};

template <typename Real>
OperatorSet<Real> build_operators(const TruncationSpec& spec) {
  using M = ComplexMatrix<Real>;
  const int levels = spec.n_max + 1;
  const M cavity_id = M::Identity(levels, levels);
  const M atom_id = M::Identity(2, 2);
  M lowering = M::Zero(2, 2);
  lowering(1, 0) = 1;  // |b><a|
  M upper = M::Zero(2, 2);
  upper(0, 0) = 1;
  M lower = M::Zero(2, 2);
  lower(1, 1) = 1;

  OperatorSet<Real> ops;
  ops.n_max = spec.n_max;
  ops.a = kron<Real>(atom_id, annihilation<Real>(spec.n_max));
  ops.a_dag = ops.a.adjoint();
  ops.sigma = kron<Real>(lowering, cavity_id);
  ops.sigma_dag = ops.sigma.adjoint();
  ops.eta_a = kron<Real>(upper, cavity_id);
  ops.eta_b = kron<Real>(lower, cavity_id);
  ops.identity = M::Identity(2 * levels, 2 * levels);
  return ops;
}

/// H = i eps (a^dag - a) + i g (sigma^dag a - a^dag sigma).
template <typename Real>
DenseOperator<Real> hamiltonian(const BasicModelParams<Real>& p, const OperatorSet<Real>& ops) {
  const std::complex<Real> i(0, 1);
  return i * p.epsilon() * (ops.a_dag - ops.a) +
         i * p.g() * (ops.sigma_dag * ops.a - ops.a_dag * ops.sigma);
}

/// Applies rho -> -i[H, rho] + kappa (L rho L^dag - {L^dag L, rho} / 2) directly
/// on the matrix, without going through the superoperator.
template <typename Real>
ComplexMatrix<Real> apply_generator(const DenseOperator<Real>& h, const DenseOperator<Real>& jump, Real kappa,
                                    const ComplexMatrix<Real>& rho) {
  const std::complex<Real> i(0, 1);
  const ComplexMatrix<Real> number = jump.adjoint() * jump;
  return -i * (h * rho - rho * h) + kappa * (jump * rho * jump.adjoint()) -
         (kappa / Real(2)) * (number * rho + rho * number);
}

/// Superoperator of apply_generator() acting on column-stacked matrices.
template <typename Real>
ComplexMatrix<Real> liouvillian(const DenseOperator<Real>& h, const DenseOperator<Real>& jump, Real kappa) {
  using M = ComplexMatrix<Real>;
  const Eigen::Index d = h.rows();
  const M id = M::Identity(d, d);
  const M number = jump.adjoint() * jump;
  const std::complex<Real> i(0, 1);

  M out = M::Zero(d * d, d * d);
  add_kron<Real>(out, -i, id, h);
  add_kron<Real>(out, i, h.transpose(), id);
  add_kron<Real>(out, kappa, jump.conjugate(), jump);
  add_kron<Real>(out, -kappa / Real(2), id, number);
  add_kron<Real>(out, -kappa / Real(2), number.transpose(), id);
  return out;
}

template <typename Real>
ComplexMatrix<Real> build_liouvillian(const BasicModelParams<Real>& p, const OperatorSet<Real>& ops) {
  return liouvillian<Real>(hamiltonian(p, ops), ops.a, p.kappa());
}

template <typename Real>
ComplexMatrix<Real> build_liouvillian(const BasicModelParams<Real>& p, const TruncationSpec& spec) {
  return build_liouvillian(p, build_operators<Real>(spec));
}

template <typename Real>
ComplexVector<Real> vectorize(const ComplexMatrix<Real>& m) {
  return Eigen::Map<const ComplexVector<Real>>(m.data(), m.size());
}

template <typename Real>
ComplexMatrix<Real> unvectorize(const ComplexVector<Real>& v, Eigen::Index dim) {
  return Eigen::Map<const ComplexMatrix<Real>>(v.data(), dim, dim);
}

/// A validated density matrix: Hermitian, unit trace, numerically positive.
template <typename Real>
class DensityMatrix {
 public:
  static constexpr Real kHermitianTol = Real(1e-12);
  static constexpr Real kTraceTol = Real(1e-12);
  static constexpr Real kPositivityTol = Real(1e-10);

  /// Checks the invariants; throws NumericalError if any fails.
  static DensityMatrix from_matrix(ComplexMatrix<Real> m) {
    if (m.rows() != m.cols() || m.rows() < 2) throw NumericalError("density matrix must be square, dim >= 2");
    if (!m.allFinite()) throw NumericalError("density matrix has non-finite entries");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
      throw NumericalError("density matrix is not Hermitian");
    }
    if (std::abs(m.trace() - std::complex<Real>(1)) > kTraceTol) {
      throw NumericalError("density matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(m, Eigen::EigenvaluesOnly);
    const Real min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kPositivityTol) throw NumericalError("density matrix is not positive semidefinite");
    return DensityMatrix(std::move(m), min_eig);
  }

  /// Projector onto a normalized pure state.
  static DensityMatrix pure(const ComplexVector<Real>& psi) {
    ComplexMatrix<Real> m = psi * psi.adjoint();
    m = (m + m.adjoint()) / Real(2);
    return from_matrix(std::move(m));
  }

  const ComplexMatrix<Real>& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  Real min_eigenvalue() const noexcept { return min_eig_; }

 private:
  DensityMatrix(ComplexMatrix<Real> m, Real min_eig) : m_(std::move(m)), min_eig_(min_eig) {}
  ComplexMatrix<Real> m_;
  Real min_eig_;
};

/// Reciprocal condition estimate below which the constrained system is
/// treated as rank deficient.
inline constexpr double kSingularRcond = 1e-12;

/// Solves L(rho) = 0 with tr(rho) = 1 by overwriting the first row of L (the
/// equation for rho_00) with the trace functional.
template <typename Real>
DensityMatrix<Real> steady_state(const ComplexMatrix<Real>& superop) {
  const Eigen::Index n = superop.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n || superop.cols() != n) throw DomainError("superoperator must be square with size dim^2");

  ComplexMatrix<Real> system = superop;
  system.row(0).setZero();
  for (Eigen::Index k = 0; k < d; ++k) system(0, k * d + k) = 1;
  ComplexVector<Real> rhs = ComplexVector<Real>::Zero(n);
  rhs(0) = 1;

  Eigen::PartialPivLU<ComplexMatrix<Real>> lu(system);
  // The rcond estimator can miss an exactly zero pivot, so check both.
  const Real rcond = lu.rcond();
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const bool tiny_pivot = !(pivots.minCoeff() > Real(kSingularRcond) * pivots.maxCoeff());
  ComplexVector<Real> solution = lu.solve(rhs);
  if (!(rcond > Real(kSingularRcond)) || tiny_pivot || !solution.allFinite()) {
    throw SingularSystemError("steady-state system is rank deficient (rcond estimate " +
                              std::to_string(static_cast<double>(rcond)) + "); stationary state is not unique");
  }
  ComplexMatrix<Real> rho = unvectorize<Real>(solution, d);
  rho = (rho + rho.adjoint()) / Real(2);
  return DensityMatrix<Real>::from_matrix(std::move(rho));
}

template <typename Real>
struct GuardResult {
  bool ok;
  Real edge_population;
};

/// Population of the top Fock level summed over all atomic sectors. The number
/// of sectors is inferred from dim / (n_max + 1).
template <typename Real>
GuardResult<Real> truncation_guard(const DensityMatrix<Real>& rho, const TruncationSpec& spec) {
  const Eigen::Index levels = spec.n_max + 1;
  if (rho.dim() % levels != 0) throw DomainError("density matrix dimension is incompatible with n_max");
  Real edge = 0;
  for (Eigen::Index sector = 0; sector < rho.dim() / levels; ++sector) {
    const Eigen::Index k = sector * levels + spec.n_max;
    edge += rho.matrix()(k, k).real();
  }
  return {edge < static_cast<Real>(spec.edge_tolerance), edge};
}

template <typename Real>
struct OracleReport {
  Real eta_a;
  Real eta_b;
  std::complex<Real> sigma;
  Real aa_dag;
  Real adag_a;
  Real nbar;
  Real commutator_expectation;
  Real edge_population;
};

/// Exact expectation values tr(rho O). Throws TruncationError if the guard fails.
template <typename Real>
OracleReport<Real> expectations(const DensityMatrix<Real>& rho, const OperatorSet<Real>& ops,
                                const TruncationSpec& spec) {
  if (rho.dim() != ops.dim()) throw DomainError("density matrix and operator set dimensions differ");
  const auto guard = truncation_guard(rho, spec);
  if (!guard.ok) {
    throw TruncationError("top Fock level population " + std::to_string(static_cast<double>(guard.edge_population)) +
                              " exceeds edge tolerance; increase n_max",
                          static_cast<double>(guard.edge_population));
  }
  const auto& m = rho.matrix();
  const ComplexMatrix<Real> number = ops.a_dag * ops.a;
  const ComplexMatrix<Real> anti = ops.a * ops.a_dag;

  OracleReport<Real> r;
  r.eta_a = trace_product<Real>(m, ops.eta_a).real();
  r.eta_b = trace_product<Real>(m, ops.eta_b).real();
  r.sigma = trace_product<Real>(m, ops.sigma);
  r.aa_dag = trace_product<Real>(m, anti).real();
  r.adag_a = trace_product<Real>(m, number).real();
  r.nbar = r.adag_a;
  r.commutator_expectation = trace_product<Real>(m, anti - number).real();
  r.edge_population = guard.edge_population;
  return r;
}

template <typename Real>
struct OracleSolution {
  DensityMatrix<Real> rho;
  OracleReport<Real> report;
};

/// Full oracle pipeline for one parameter point.
///
/// With g == 0 the atom is a spectator whose state is conserved, so the
/// composite generator has a degenerate kernel. The cavity factor is then
/// solved on its own and paired with the atom in the lower level, which is
/// the same initial condition the moment integrator uses.
template <typename Real>
OracleSolution<Real> solve_oracle(const BasicModelParams<Real>& p, const TruncationSpec& spec) {
  const auto ops = build_operators<Real>(spec);
  if (regime_report(p) != RegimeLabel::FreeMode) {
    auto rho = steady_state(build_liouvillian(p, ops));
    auto report = expectations(rho, ops, spec);
    return {std::move(rho), report};
  }
  const ComplexMatrix<Real> a = annihilation<Real>(spec.n_max);
  const std::complex<Real> i(0, 1);
  const ComplexMatrix<Real> h = i * p.epsilon() * (a.adjoint() - a);
  const auto cavity = steady_state(liouvillian<Real>(h, a, p.kappa()));
  ComplexMatrix<Real> atom = ComplexMatrix<Real>::Zero(2, 2);
  atom(1, 1) = 1;
  auto rho = DensityMatrix<Real>::from_matrix(kron<Real>(atom, cavity.matrix()));
  auto report = expectations(rho, ops, spec);
  return {std::move(rho), report};
}

/// Both sides of the exact atomic moment equations.
template <typename Real>
struct MomentResidual {
  std::complex<Real> sigma_generator;  // tr(sigma L(rho))
  std::complex<Real> sigma_formula;    // g tr((eta_b - eta_a) a rho)
  std::complex<Real> eta_generator;    // tr(eta_a L(rho))
  std::complex<Real> eta_formula;      // g tr((sigma^dag a + a^dag sigma) rho)
  Real max_residual;
};

template <typename Real>
MomentResidual<Real> verify_moment_equations(const DensityMatrix<Real>& rho, const BasicModelParams<Real>& p,
                                             const OperatorSet<Real>& ops) {
  const auto& m = rho.matrix();
  const ComplexMatrix<Real> drho = apply_generator<Real>(hamiltonian(p, ops), ops.a, p.kappa(), m);

  MomentResidual<Real> r;
  r.sigma_generator = trace_product<Real>(drho, ops.sigma);
  r.sigma_formula = p.g() * trace_product<Real>(m, ((ops.eta_b - ops.eta_a) * ops.a).eval());
  r.eta_generator = trace_product<Real>(drho, ops.eta_a);
  r.eta_formula = p.g() * trace_product<Real>(m, (ops.sigma_dag * ops.a + ops.a_dag * ops.sigma).eval());
  r.max_residual = std::max(std::abs(r.sigma_generator - r.sigma_formula), std::abs(r.eta_generator - r.eta_formula));
  return r;
}

/// One product test state |alpha> (x) |beta> for the superposed-mode check.
template <typename Real>
struct CrossTermCase {
  std::complex<Real> alpha;
  std::complex<Real> beta;
  analytic::ModeStats<Real> mode_a;  // measured on the truncated state
  analytic::ModeStats<Real> mode_b;
  Real matrix_cross_term;  // i(<a^dag b> - <b^dag a>)
  Real c_photons;          // <c^dag c>
  analytic::SuperposedPhotons<Real> formula;
};

template <typename Real>
struct SuperpositionReport {
  int n_max;
  Real max_deviation;          // max |[c,c^dag] - [a,a^dag] - [b,b^dag]|
  Real max_cross_commutator;   // max(|[a,b^dag]|, |[b,a^dag]|)
  std::vector<CrossTermCase<Real>> cases;
};

/// Tolerance for deciding that a measured cross term vanishes.
inline constexpr double kCrossTermTol = 1e-12;

/// Matrix-level check of the superposed mode c = a + i b on two Fock spaces
/// with n_max levels each (mode a is the first tensor factor).
template <typename Real>
SuperpositionReport<Real> two_mode_superposition_check(
    int n_max, const std::vector<std::pair<std::complex<Real>, std::complex<Real>>>& amplitudes) {
  if (n_max < 1) throw DomainError("two-mode check needs n_max >= 1");
  using M = ComplexMatrix<Real>;
  const std::complex<Real> i(0, 1);
  const M single = annihilation<Real>(n_max);
  const M id = M::Identity(n_max + 1, n_max + 1);
  const M a = kron<Real>(single, id);
  const M b = kron<Real>(id, single);
  const M c = a + i * b;
  const M a_dag = a.adjoint(), b_dag = b.adjoint(), c_dag = c.adjoint();

  const M comm_a = commutator<Real>(a, a_dag);
  const M comm_b = commutator<Real>(b, b_dag);
  const M comm_c = commutator<Real>(c, c_dag);

  SuperpositionReport<Real> report;
  report.n_max = n_max;
  report.max_deviation = (comm_c - comm_a - comm_b).cwiseAbs().maxCoeff();
  report.max_cross_commutator = std::max(commutator<Real>(a, b_dag).cwiseAbs().maxCoeff(),
                                         commutator<Real>(b, a_dag).cwiseAbs().maxCoeff());

  for (const auto& [alpha, beta] : amplitudes) {
    const ComplexVector<Real> psi = kron<Real>(coherent_state<Real>(alpha, n_max), coherent_state<Real>(beta, n_max));
    auto expect = [&psi](const M& op) { return psi.dot(op * psi); };  // <psi|op|psi>

    CrossTermCase<Real> cs;
    cs.alpha = alpha;
    cs.beta = beta;
    cs.mode_a = {expect(a), expect(a_dag * a).real(), expect(comm_a).real()};
    cs.mode_b = {expect(b), expect(b_dag * b).real(), expect(comm_b).real()};
    cs.matrix_cross_term = (i * (expect(a_dag * b) - expect(b_dag * a))).real();
    cs.c_photons = expect(c_dag * c).real();
    cs.formula = analytic::superposition_mean_photons(cs.mode_a, cs.mode_b, false);
    cs.formula.additive = std::abs(cs.formula.cross_term) <= static_cast<Real>(kCrossTermTol);
    report.cases.push_back(cs);
  }
  return report;
}

}  // namespace cavitylab::lindblad
