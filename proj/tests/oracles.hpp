#pragma once

// Independent test oracles, written as plain loops against the definitions.
// These deliberately avoid the library's tensor/solver plumbing so that the
// two code paths can disagree.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "finsler_lie/algebra.hpp"

namespace oracles {

using finsler_lie::AlmostComplexStructure;
using finsler_lie::Complex;
using finsler_lie::ComplexifiedAlgebra;
using finsler_lie::RealLieAlgebra;

/// N_I(f_i, f_j) for one basis pair, straight from the defining formula.
inline Eigen::VectorXd nijenhuis_pair(const RealLieAlgebra& alg, const Eigen::MatrixXd& I, int i,
                                      int j) {
  const int d = alg.dim();
  const Eigen::VectorXd fi = Eigen::VectorXd::Unit(d, i);
  const Eigen::VectorXd fj = Eigen::VectorXd::Unit(d, j);
  return alg.bracket(fi, fj) - alg.bracket(I * fi, I * fj) + I * alg.bracket(I * fi, fj) +
         I * alg.bracket(fi, I * fj);
}

/// Nonlinear connection by solving the defining linear system with Eigen,
/// using only the bracket table and the jet blocks.
inline Eigen::MatrixXcd solve_nonlinear_connection(const ComplexifiedAlgebra& alg,
                                                   const Eigen::MatrixXcd& g,
                                                   const Eigen::MatrixXcd& g_antihol,
                                                   const Eigen::VectorXcd& v) {
  const int n = alg.n();
  Eigen::MatrixXcd rhs(n, n);  // rows jbar, columns k
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Complex s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t)
          s += v[i] * g(i, t) * std::conj(alg.lam_mixed_hol(t, j, k));
      for (int t = 0; t < n; ++t)
        for (int q = 0; q < n; ++q)
          s += g_antihol(j, t) * std::conj(alg.lam_mixed_hol(t, q, k)) * std::conj(v[q]);
      rhs(j, k) = s;
    }
  // g_{s jbar} N^s_k = rhs(j, k): coefficient matrix A(j, s) = g(s, j)
  Eigen::MatrixXcd A(n, n);
  for (int j = 0; j < n; ++j)
    for (int s = 0; s < n; ++s) A(j, s) = g(s, j);
  return A.partialPivLu().solve(rhs);
}

/// Closed-form horizontal coefficients for a Hermitian norm (Cartan tensors
/// vanish): Gamma^j_{ik} = h^{qbar j} h_{i tbar} conj(lambda^t_{q kbar}).
inline finsler_lie::Tensor3c hermitian_gamma(const ComplexifiedAlgebra& alg,
                                             const Eigen::MatrixXcd& H) {
  const int n = alg.n();
  const Eigen::MatrixXcd Hinv = H.inverse();
  finsler_lie::Tensor3c gamma(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        Complex s = 0.0;
        for (int q = 0; q < n; ++q)
          for (int t = 0; t < n; ++t)
            s += Hinv(q, j) * H(i, t) * std::conj(alg.lam_mixed_hol(t, q, k));
        gamma(j, i, k) = s;
      }
  return gamma;
}

/// Hermitian-case torsion T^j_{ik} = (Gamma^j_{ki} - lambda^j_{ik} - Gamma^j_{ik})/2.
inline finsler_lie::Tensor3c hermitian_torsion(const ComplexifiedAlgebra& alg,
                                               const Eigen::MatrixXcd& H) {
  const int n = alg.n();
  const auto gamma = hermitian_gamma(alg, H);
  finsler_lie::Tensor3c tor(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        tor(j, i, k) = 0.5 * (gamma(j, k, i) - alg.lam_hol(j, i, k) - gamma(j, i, k));
  return tor;
}

/// su(2) + R with an integrable product structure sheared by f3 -> f3 + f1,
/// which keeps I*I = -Id but destroys integrability.
inline std::pair<RealLieAlgebra, Eigen::MatrixXd> su2_plus_r_sheared() {
  std::vector<finsler_lie::RealStructureEntry> entries = {
      {3, 1, 2, 1.0},  // [f1,f2] = f3
      {1, 2, 3, 1.0},  // [f2,f3] = f1
      {2, 3, 1, 1.0},  // [f3,f1] = f2
  };
  RealLieAlgebra alg = RealLieAlgebra::from_entries(4, entries);
  Eigen::MatrixXd I0 = Eigen::MatrixXd::Zero(4, 4);
  I0(1, 0) = 1;  // f1 -> f2
  I0(0, 1) = -1;
  I0(3, 2) = 1;  // f3 -> f4
  I0(2, 3) = -1;
  Eigen::MatrixXd S = Eigen::MatrixXd::Identity(4, 4);
  S(0, 2) = 1.0;  // f3 -> f3 + f1
  return {alg, S * I0 * S.inverse()};
}

}  // namespace oracles
