#pragma once

#include <Eigen/Dense>

#include "finsler_lie/algebra.hpp"
#include "finsler_lie/norm.hpp"

namespace finsler_lie {

/// Chern-Rund connection data at a direction v.
struct ConnectionData {
  Eigen::MatrixXcd N;          // N^i_k
  Eigen::MatrixXcd N_bar_arg;  // N^i_{jbar} = -lambda^i_{k jbar} v^k
  Tensor3c Gamma;              // Gamma^j_{ik}, indexed (j, i, k)
  Tensor3c Gamma_mixed;        // Gamma^j_{i kbar} = -lambda^j_{i kbar}
  Tensor3c T;                  // T^j_{ik}, indexed (j, i, k)
  double solve_residual = 0.0;
};

struct NonlinearConnection {
  Eigen::MatrixXcd N;
  Eigen::MatrixXcd N_bar_arg;
  double solve_residual = 0.0;
};

/// Solves g_{s jbar} N^s_k = lambda_{o jbar k} + g_{jbar tbar} lambda^{tbar}_{obar k}
/// per column k ("o" is contraction with v, "obar" with vbar).
NonlinearConnection nonlinear_connection(const ComplexifiedAlgebra& alg, const MetricJet& jet,
                                         const Eigen::VectorXcd& v);

/// Gamma^j_{ik} = g^{qbar j}(g_{i tbar} lambda^{tbar}_{qbar k}
///                - C_{i qbar l} N^l_k + C_{i qbar tbar} lambda^{tbar}_{sbar k} vbar^s)
/// together with Gamma^j_{i kbar} = -lambda^j_{i kbar}.
std::pair<Tensor3c, Tensor3c> horizontal_coefficients(const ComplexifiedAlgebra& alg,
                                                      const MetricJet& jet,
                                                      const Eigen::VectorXcd& v,
                                                      const Eigen::MatrixXcd& N);

Tensor3c torsion(const ComplexifiedAlgebra& alg, const MetricJet& jet, const Eigen::VectorXcd& v,
                 const Eigen::MatrixXcd& N);

/// The full connection package at v.
ConnectionData chern_rund(const ComplexifiedAlgebra& alg, const MetricJet& jet,
                          const Eigen::VectorXcd& v);

/// The connection operator applied to w: components N^i_k w^k.
Eigen::VectorXcd connection_operator(const ComplexifiedAlgebra& alg, const MetricJet& jet,
                                     const Eigen::VectorXcd& v, const Eigen::VectorXcd& w);

/// Scalar pairings of the metric jet, as used in the classification residuals:
/// g_v(a,b) = g_{i jbar} a^i conj(b^j), S_v(a,b) = g_{ij} a^i b^j and its
/// conjugate, and the Cartan pairings C+(a,b,c) = C_{i jbar l} a^i conj(b^j) c^l,
/// C-(a,b,c) = C_{i jbar tbar} a^i conj(b^j) conj(c^t).
Complex pair_g(const MetricJet& jet, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
Complex pair_s(const MetricJet& jet, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
Complex pair_s_bar(const MetricJet& jet, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
Complex pair_c_plus(const MetricJet& jet, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                    const Eigen::VectorXcd& c);
Complex pair_c_minus(const MetricJet& jet, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                     const Eigen::VectorXcd& c);

/// Residual of the defining identity
/// g_v(N(w), u) = g_v(v, [u, wbar]^{1,0}) + Sbar_v(u, [v, wbar]^{1,0})
/// maximized over `probes` seeded random pairs (u, w).
double connection_operator_identity_residual(const ComplexifiedAlgebra& alg, const MetricJet& jet,
                                             const Eigen::VectorXcd& v, int probes,
                                             std::uint64_t seed);

}  // namespace finsler_lie
