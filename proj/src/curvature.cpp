#include "finsler_lie/curvature.hpp"

#include "finsler_lie/detail/connection_core.hpp"

namespace finsler_lie {

namespace {

void require_nonzero(const Eigen::VectorXcd& v, const char* name) {
  if (v.size() == 0 || v.cwiseAbs().maxCoeff() == 0.0)
    throw InputError(std::string(name) + " must be a nonzero direction");
}

detail::JetView<Complex> order2_view(const NormSpec& norm, const Eigen::VectorXcd& v,
                                     const DiffConfig& cfg) {
  const int n = norm.dim();
  const RealDerivs t = f2_derivative_tensors(norm, v, 2, cfg);
  detail::JetView<Complex> view;
  view.g = GMat<Complex>(n, n);
  view.g_antihol = GMat<Complex>(n, n);
  view.has_cartan = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      view.g(i, j) = wirtinger(t, {{i, false}, {j, true}});
      view.g_antihol(i, j) = wirtinger(t, {{i, true}, {j, true}});
    }
  return view;
}

}  // namespace

Eigen::MatrixXcd nonlinear_connection_at(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                                         const Eigen::VectorXcd& v, const DiffConfig& cfg) {
  const int n = alg.n();
  const auto aview = detail::make_algebra_view<Complex>(alg);
  const auto jview = order2_view(norm, v, cfg);
  const auto glu = detail::g_transpose_lu(jview);
  std::vector<Complex> coords(v.data(), v.data() + v.size());
  const auto N = detail::compute_nonlinear_connection(aview, jview, coords, glu);
  Eigen::MatrixXcd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) out(i, k) = N(i, k);
  return out;
}

CurvatureData curvature_block(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                              const Eigen::VectorXcd& v, const DiffConfig& cfg) {
  require_nonzero(v, "v");
  if (alg.n() != norm.dim() || alg.n() != static_cast<int>(v.size()))
    throw InputError("algebra, norm and direction dimensions must agree");
  const int n = alg.n();

  CurvatureData out;
  out.dN_dv = Tensor3c(n);
  out.dN_dvbar = Tensor3c(n);
  out.N.resize(n, n);

  if (cfg.mode == DiffMode::dual && norm.kind() != NormSpec::Kind::custom) {
    // propagate first-order duals in the 2n real coordinates through the
    // whole solve; jet blocks carry their own derivatives from the order-3
    // tensors of F^2
    const RealDerivs t = f2_derivative_tensors(norm, v, 3, cfg);
    const auto aview = detail::make_algebra_view<detail::CDual>(alg);
    const auto jview = detail::dual_view(t, n, /*with_cartan=*/false);
    const auto glu = detail::g_transpose_lu(jview);
    const auto coords = detail::dual_coordinates(v);
    const auto N = detail::compute_nonlinear_connection(aview, jview, coords, glu);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const auto& e = N(i, k);
        out.N(i, k) = Complex(e.re.v, e.im.v);
        for (int l = 0; l < n; ++l) {
          const Complex dx(e.re.d.empty() ? 0.0 : e.re.d[2 * l],
                           e.im.d.empty() ? 0.0 : e.im.d[2 * l]);
          const Complex dy(e.re.d.empty() ? 0.0 : e.re.d[2 * l + 1],
                           e.im.d.empty() ? 0.0 : e.im.d[2 * l + 1]);
          out.dN_dv(i, k, l) = 0.5 * (dx - Complex(0, 1) * dy);
          out.dN_dvbar(i, k, l) = 0.5 * (dx + Complex(0, 1) * dy);
        }
      }
  } else {
    DiffConfig inner = cfg;
    inner.mode = DiffMode::fd;
    auto map = [&](const Eigen::VectorXcd& p) {
      const Eigen::MatrixXcd N = nonlinear_connection_at(alg, norm, p, inner);
      std::vector<Complex> flat(static_cast<std::size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) flat[static_cast<std::size_t>(i) * n + k] = N(i, k);
      return flat;
    };
    const MapJacobian jac = fd_map_jacobian(map, v, /*inner_order=*/2, inner);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const std::size_t q = static_cast<std::size_t>(i) * n + k;
        out.N(i, k) = jac.value[q];
        for (int l = 0; l < n; ++l) {
          out.dN_dv(i, k, l) = jac.d_dv[l][q];
          out.dN_dvbar(i, k, l) = jac.d_dvbar[l][q];
        }
      }
  }

  out.R_block = Tensor3c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        Complex s = 0.0;
        for (int l = 0; l < n; ++l) {
          Complex lam_o = 0.0;  // lambda^l_{s jbar} v^s
          for (int p = 0; p < n; ++p) lam_o += alg.lam_mixed_hol(l, p, j) * v[p];
          s -= out.dN_dv(i, k, l) * lam_o;
        }
        for (int t = 0; t < n; ++t) s += out.dN_dvbar(i, k, t) * std::conj(out.N(t, j));
        for (int l = 0; l < n; ++l) {
          s -= out.N(i, l) * alg.lam_mixed_hol(l, k, j);
          s += alg.lam_mixed_hol(i, l, j) * out.N(l, k);
        }
        for (int p = 0; p < n; ++p)
          for (int t = 0; t < n; ++t)
            s -= alg.lam_mixed_hol(i, p, t) * v[p] * alg.lam_anti_conj(t, j, k);
        out.R_block(i, k, j) = s;
      }
  return out;
}

Eigen::VectorXcd curvature_operator(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                                    const Eigen::VectorXcd& v, const Eigen::VectorXcd& w,
                                    const DiffConfig& cfg) {
  require_nonzero(v, "v");
  const CurvatureData data = curvature_block(alg, norm, v, cfg);
  const int n = alg.n();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < n; ++i) {
    Complex s = 0.0;
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) s -= w[k] * std::conj(w[j]) * data.R_block(i, k, j);
    out[i] = s;
  }
  return out;
}

Eigen::VectorXcd curvature_operator_coordinate_free(const ComplexifiedAlgebra& alg,
                                                    const NormSpec& norm,
                                                    const Eigen::VectorXcd& v,
                                                    const Eigen::VectorXcd& w,
                                                    const DiffConfig& cfg) {
  require_nonzero(v, "v");
  require_nonzero(w, "w");
  const int n = alg.n();

  auto n_of = [&](const Eigen::VectorXcd& p) { return nonlinear_connection_at(alg, norm, p, cfg); };
  auto map_nw = [&](const Eigen::VectorXcd& p) {
    const Eigen::VectorXcd nw = n_of(p) * w;
    return std::vector<Complex>(nw.data(), nw.data() + nw.size());
  };

  const Eigen::MatrixXcd N = n_of(v);
  const Eigen::VectorXcd nw = N * w;

  // D_{[v,wbar]^{1,0}} N(w)
  const Eigen::VectorXcd u1 = bracket_hol_antihol_10(alg, v, w);
  const auto t1 = fd_directional_hol(map_nw, v, u1, /*inner_order=*/2, cfg);
  // D_{Nbar(wbar)} N(w), the antiholomorphic direction with coefficients conj(N w)
  const auto t2 = fd_directional_antihol(map_nw, v, nw.conjugate(), /*inner_order=*/2, cfg);
  // N([w, wbar]^{1,0})
  const Eigen::VectorXcd t3 = N * bracket_hol_antihol_10(alg, w, w);
  // [N(w), wbar]^{1,0}
  const Eigen::VectorXcd t4 = bracket_hol_antihol_10(alg, nw, w);
  // [v, [wbar, w]^{0,1}]^{1,0}
  const AlgebraElement inner = bracket(alg, antihol_element(w), hol_element(w));
  const AlgebraElement outer =
      bracket(alg, hol_element(v), AlgebraElement{Eigen::VectorXcd::Zero(n), inner.anti_conj});

  Eigen::VectorXcd out(n);
  for (int i = 0; i < n; ++i) out[i] = t1[i] - t2[i] + t3[i] - t4[i] + outer.hol[i];
  return out;
}

BisectionalResult bisectional(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                              const Eigen::VectorXcd& v, const Eigen::VectorXcd& w,
                              const DiffConfig& cfg) {
  require_nonzero(v, "v");
  require_nonzero(w, "w");
  const MetricJet jet = metric_jet(norm, v, cfg);
  const Eigen::VectorXcd rw = curvature_operator(alg, norm, v, w, cfg);
  const Complex num = pair_g(jet, rw, v);
  const double den = pair_g(jet, v, v).real() * pair_g(jet, w, w).real();
  BisectionalResult out;
  out.value = num.real() / den;
  out.imag_residual = std::abs(num.imag()) / den;
  return out;
}

double holomorphic_sectional(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                             const Eigen::VectorXcd& v, const DiffConfig& cfg) {
  return 2.0 * bisectional(alg, norm, v, v, cfg).value;
}

}  // namespace finsler_lie
