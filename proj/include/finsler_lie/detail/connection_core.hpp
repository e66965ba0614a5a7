#pragma once

#include <vector>

#include "finsler_lie/algebra.hpp"
#include "finsler_lie/linalg.hpp"
#include "finsler_lie/norm.hpp"

namespace finsler_lie::detail {

/// Structure constants converted to the working scalar.
template <class CT>
struct AlgebraView {
  int n = 0;
  GT3<CT> hol;        // lambda^i_{jk}
  GT3<CT> mixed_hol;  // lambda^i_{j kbar}
};

template <class CT>
CT to_ct(const Complex& z) {
  if constexpr (std::is_same_v<CT, Complex>)
    return z;
  else
    return CT(z.real(), z.imag());
}

template <class CT>
AlgebraView<CT> make_algebra_view(const ComplexifiedAlgebra& alg) {
  const int n = alg.n();
  AlgebraView<CT> view;
  view.n = n;
  view.hol = GT3<CT>(n);
  view.mixed_hol = GT3<CT>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        view.hol(i, j, k) = to_ct<CT>(alg.lam_hol(i, j, k));
        view.mixed_hol(i, j, k) = to_ct<CT>(alg.lam_mixed_hol(i, j, k));
      }
  return view;
}

/// lambda^{tbar}_{jbar k} = conj(lambda^t_{j kbar}), the block driving the
/// nonlinear connection.
template <class CT>
CT lam_anti(const AlgebraView<CT>& a, int t, int j, int k) {
  using std::conj;
  return conj(a.mixed_hol(t, j, k));
}

/// Right-hand side of g_{s jbar} N^s_k = v^i g_{i tbar} lambda^{tbar}_{jbar k}
///                                      + g_{jbar tbar} lambda^{tbar}_{sbar k} vbar^s.
template <class CT>
GMat<CT> connection_rhs(const AlgebraView<CT>& alg, const JetView<CT>& jet,
                        const std::vector<CT>& v) {
  using std::conj;
  const int n = alg.n;
  GMat<CT> rhs(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      CT s{};
      for (int t = 0; t < n; ++t) {
        const CT lam = lam_anti(alg, t, j, k);
        CT gv{};
        for (int i = 0; i < n; ++i) gv = gv + v[i] * jet.g(i, t);
        s = s + gv * lam;
      }
      for (int t = 0; t < n; ++t) {
        CT w{};
        for (int q = 0; q < n; ++q) w = w + lam_anti(alg, t, q, k) * conj(v[q]);
        s = s + jet.g_antihol(j, t) * w;
      }
      rhs(j, k) = s;
    }
  return rhs;
}

template <class CT>
GLu<CT> g_transpose_lu(const JetView<CT>& jet) {
  const int n = jet.g.rows();
  GMat<CT> gt(n, n);
  for (int j = 0; j < n; ++j)
    for (int s = 0; s < n; ++s) gt(j, s) = jet.g(s, j);
  return GLu<CT>(std::move(gt));
}

/// N^q_k by a dense linear solve against g per column.
template <class CT>
GMat<CT> compute_nonlinear_connection(const AlgebraView<CT>& alg, const JetView<CT>& jet,
                                      const std::vector<CT>& v, const GLu<CT>& glu,
                                      double* residual = nullptr) {
  const int n = alg.n;
  const GMat<CT> rhs = connection_rhs(alg, jet, v);
  GMat<CT> N(n, n);
  std::vector<CT> col(n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) col[j] = rhs(j, k);
    auto x = glu.solve(col);
    for (int q = 0; q < n; ++q) N(q, k) = x[q];
  }
  if (residual) {
    double r = 0.0;
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        CT acc{};
        for (int s = 0; s < n; ++s) acc = acc + jet.g(s, j) * N(s, k);
        acc = acc - rhs(j, k);
        r = std::max(r, leaf_abs(acc));
      }
    *residual = r;
  }
  return N;
}

/// Contractions shared by the Gamma and torsion assemblies:
///   lam_raised(i,j,k) = g^{qbar j} g_{i tbar} lambda^{tbar}_{qbar k}
///   cn(i,j,k)         = g^{qbar j} C_{i qbar l} N^l_k
///   cl(i,j,k)         = g^{qbar j} C_{i qbar tbar} lambda^{tbar}_{sbar k} vbar^s
template <class CT>
struct HorizontalTerms {
  GT3<CT> lam_raised, cn, cl;
};

template <class CT>
HorizontalTerms<CT> horizontal_terms(const AlgebraView<CT>& alg, const JetView<CT>& jet,
                                     const std::vector<CT>& v, const GMat<CT>& N,
                                     const GLu<CT>& glu) {
  using std::conj;
  const int n = alg.n;
  HorizontalTerms<CT> out{GT3<CT>(n), GT3<CT>(n), GT3<CT>(n)};

  GMat<CT> w(n, n);  // lambda^{tbar}_{obar k}
  for (int t = 0; t < n; ++t)
    for (int k = 0; k < n; ++k) {
      CT s{};
      for (int q = 0; q < n; ++q) s = s + lam_anti(alg, t, q, k) * conj(v[q]);
      w(t, k) = s;
    }

  std::vector<CT> rhs1(n), rhs2(n), rhs3(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      for (int q = 0; q < n; ++q) {
        CT a{}, b{}, c{};
        for (int t = 0; t < n; ++t) a = a + jet.g(i, t) * lam_anti(alg, t, q, k);
        if (jet.has_cartan) {
          for (int l = 0; l < n; ++l) b = b + jet.C_plus(i, q, l) * N(l, k);
          for (int t = 0; t < n; ++t) c = c + jet.C_minus(i, q, t) * w(t, k);
        }
        rhs1[q] = a;
        rhs2[q] = b;
        rhs3[q] = c;
      }
      auto x1 = glu.solve(rhs1);
      auto x2 = glu.solve(rhs2);
      auto x3 = glu.solve(rhs3);
      for (int j = 0; j < n; ++j) {
        out.lam_raised(i, j, k) = x1[j];
        out.cn(i, j, k) = x2[j];
        out.cl(i, j, k) = x3[j];
      }
    }
  return out;
}

/// Gamma^j_{ik} = lam_raised(i,j,k) - cn(i,j,k) + cl(i,j,k).
template <class CT>
GT3<CT> assemble_gamma(const HorizontalTerms<CT>& h) {
  const int n = h.lam_raised.dim();
  GT3<CT> gamma(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        gamma(j, i, k) = h.lam_raised(i, j, k) - h.cn(i, j, k) + h.cl(i, j, k);
  return gamma;
}

/// T^j_{ik} = (1/2){ lam_raised(k,j,i) - lambda^j_{ik} - lam_raised(i,j,k)
///                   + cn(i,j,k) - cl(i,j,k) - cn(k,j,i) + cl(k,j,i) }.
template <class CT>
GT3<CT> assemble_torsion(const AlgebraView<CT>& alg, const HorizontalTerms<CT>& h) {
  const int n = h.lam_raised.dim();
  GT3<CT> tor(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        CT s = h.lam_raised(k, j, i) - alg.hol(j, i, k) - h.lam_raised(i, j, k) + h.cn(i, j, k) -
               h.cl(i, j, k) - h.cn(k, j, i) + h.cl(k, j, i);
        tor(j, i, k) = s * 0.5;
      }
  return tor;
}

}  // namespace finsler_lie::detail
