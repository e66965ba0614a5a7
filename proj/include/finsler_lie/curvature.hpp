#pragma once

#include <Eigen/Dense>

#include "finsler_lie/algebra.hpp"
#include "finsler_lie/connection.hpp"
#include "finsler_lie/norm.hpp"

namespace finsler_lie {

/// Curvature block R^i_{k jbar} at a direction v, together with the Wirtinger
/// derivatives of the nonlinear connection that enter it.
struct CurvatureData {
  Eigen::MatrixXcd N;  // N^i_k at v
  Tensor3c R_block;    // R^i_{k jbar}, indexed (i, k, j)
  Tensor3c dN_dv;      // [N^i_k]_{v^l}, indexed (i, k, l)
  Tensor3c dN_dvbar;   // [N^i_k]_{vbar^t}, indexed (i, k, t)
};

/// R^i_{k jbar} = -[N^i_k]_{v^l} lambda^l_{s jbar} v^s
///                + [N^i_k]_{vbar^t} N^{tbar}_{jbar}
///                - N^i_l lambda^l_{k jbar} + lambda^i_{l jbar} N^l_k
///                - lambda^i_{s tbar} v^s lambda^{tbar}_{jbar k},
/// with N^{tbar}_{jbar} = conj(N^t_j). The dN blocks are Wirtinger
/// derivatives of the map v -> N(v) computed by the configured engine.
CurvatureData curvature_block(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                              const Eigen::VectorXcd& v, const DiffConfig& cfg = DiffConfig{});

/// R(w, wbar)v = -w^k wbar^j R^i_{k jbar} e_i (index form, normative).
Eigen::VectorXcd curvature_operator(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                                    const Eigen::VectorXcd& v, const Eigen::VectorXcd& w,
                                    const DiffConfig& cfg = DiffConfig{});

/// The same operator assembled from its coordinate-free form
///   D_{[v,wbar]^{1,0}} N(w) - D_{Nbar(wbar)} N(w) + N([w,wbar]^{1,0})
///   - [N(w), wbar]^{1,0} + [v, [wbar,w]^{0,1}]^{1,0},
/// with the flat-connection directional derivatives evaluated by central
/// differences along curves; serves as an independent check of the index form.
Eigen::VectorXcd curvature_operator_coordinate_free(const ComplexifiedAlgebra& alg,
                                                    const NormSpec& norm,
                                                    const Eigen::VectorXcd& v,
                                                    const Eigen::VectorXcd& w,
                                                    const DiffConfig& cfg = DiffConfig{});

struct BisectionalResult {
  double value = 0.0;          // Re g_v(R(w,wbar)v, v) / (g_v(v,v) g_v(w,w))
  double imag_residual = 0.0;  // |Im numerator| / denominator, diagnostic
};

BisectionalResult bisectional(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                              const Eigen::VectorXcd& v, const Eigen::VectorXcd& w,
                              const DiffConfig& cfg = DiffConfig{});

/// K(v) = 2 B(v, v); the denominator F^4 enters as (g_v(v,v))^2.
double holomorphic_sectional(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                             const Eigen::VectorXcd& v, const DiffConfig& cfg = DiffConfig{});

/// N(v) from order-2 jet data only; shared by the curvature paths.
Eigen::MatrixXcd nonlinear_connection_at(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                                         const Eigen::VectorXcd& v, const DiffConfig& cfg);

}  // namespace finsler_lie
