#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "finsler_lie/algebra.hpp"
#include "finsler_lie/connection.hpp"
#include "finsler_lie/curvature.hpp"
#include "finsler_lie/norm.hpp"

namespace finsler_lie {

inline constexpr double kTolCls = 1e-7;

struct ClassifyConfig {
  DiffConfig diff{};
  double tol_cls = kTolCls;
  int probe_count = 0;  // residual probes per direction; 0 = basis-pair grid (n <= 8)
  int v_samples = 16;   // quasi-random unit directions added to the basis set
  int berwald_samples = 4;
  int bisectional_samples = 20;
  int theorem_gamma_samples = 100;
  int theorem_bisectional_samples = 50;
  std::uint64_t seed = 12345;
};

/// Max over probe pairs (u, w) of
/// |g_v(w,[u,vbar]^{1,0}) - g_v([v,w]^{1,0},u) - g_v(v,[u,wbar]^{1,0})
///  - Sbar_v(u,[v,wbar]^{1,0}) - C+_v(w,u,N(v)) + C-_v(w,u,[v,vbar]^{1,0})|.
double kahler_residual(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                       const Eigen::VectorXcd& v, int probe_count, std::uint64_t seed,
                       const DiffConfig& diff = DiffConfig{});

/// Max over probes w of
/// |g_v(w,[v,vbar]^{1,0}) - g_v([v,w]^{1,0},v) - g_v(v,[v,wbar]^{1,0}) - S_v(N(v),w)|.
double weakly_kahler_residual(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                              const Eigen::VectorXcd& v, int probe_count, std::uint64_t seed,
                              const DiffConfig& diff = DiffConfig{});

struct BerwaldResidual {
  double spread = 0.0;     // max over sampled v, v' of |Gamma(v) - Gamma(v')|_inf
  double max_dv = 0.0;     // max |dGamma/dv| at the samples
  double max_dvbar = 0.0;  // max |dGamma/dvbar|
  double total() const { return spread + max_dv + max_dvbar; }
};

BerwaldResidual berwald_residual(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                                 int sample_count, std::uint64_t seed,
                                 const DiffConfig& diff = DiffConfig{});

/// Wirtinger derivatives of the map v -> Gamma(v), max absolute entries.
std::pair<double, double> gamma_derivative_norms(const ComplexifiedAlgebra& alg,
                                                 const NormSpec& norm, const Eigen::VectorXcd& v,
                                                 const DiffConfig& diff = DiffConfig{});

struct ClassificationReport {
  double kahler_residual = 0.0;
  double weakly_kahler_residual = 0.0;
  BerwaldResidual berwald;
  double bisectional_max = 0.0;
  bool is_complex_group_type = false;
  bool is_abelian = false;
  bool verdict_kahler = false;
  bool verdict_weakly_kahler = false;
  bool verdict_berwald = false;
  bool kahler_implies_weakly_ok = true;
  double tol_cls = kTolCls;
  int v_samples = 0;
  int probe_count = 0;
  std::uint64_t seed = 0;
};

/// Aggregates the three residuals over basis directions plus a deterministic
/// quasi-random direction set, and records the algebra-type flags.
ClassificationReport classify(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                              const ClassifyConfig& cfg = ClassifyConfig{});

struct TheoremReport {
  double gamma_max = 0.0;
  double bisectional_max = 0.0;
  double torsion_vs_minus_half_lambda = 0.0;
  bool kahler_iff_abelian_consistent = false;
  bool is_abelian = false;
  bool verdict_kahler = false;
  bool pass = false;
};

/// For a complex-group-type algebra: checks Gamma == 0, vanishing bisectional
/// curvature, T^j_{ik} = -lambda^j_{ik}/2, and that the Kahler verdict agrees
/// with abelianness. Throws PreconditionError on algebras with nonzero mixed
/// blocks, naming the offending entry.
TheoremReport verify_complex_group_theorems(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                                            const ClassifyConfig& cfg = ClassifyConfig{});

}  // namespace finsler_lie
