#include "finsler_lie/connection.hpp"

#include "finsler_lie/detail/connection_core.hpp"
#include "finsler_lie/sampling.hpp"

namespace finsler_lie {

namespace {

std::vector<Complex> plain_coords(const Eigen::VectorXcd& v) {
  return {v.data(), v.data() + v.size()};
}

void check_dims(const ComplexifiedAlgebra& alg, const MetricJet& jet, const Eigen::VectorXcd& v) {
  if (jet.g.rows() != alg.n() || static_cast<int>(v.size()) != alg.n())
    throw InputError("algebra, jet and direction dimensions must agree");
}

}  // namespace

NonlinearConnection nonlinear_connection(const ComplexifiedAlgebra& alg, const MetricJet& jet,
                                         const Eigen::VectorXcd& v) {
  check_dims(alg, jet, v);
  const int n = alg.n();
  const auto aview = detail::make_algebra_view<Complex>(alg);
  const auto jview = detail::plain_view(jet);
  const auto glu = detail::g_transpose_lu(jview);
  NonlinearConnection out;
  const auto N = detail::compute_nonlinear_connection(aview, jview, plain_coords(v), glu,
                                                      &out.solve_residual);
  out.N.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) out.N(i, k) = N(i, k);
  out.N_bar_arg.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s -= alg.lam_mixed_hol(i, k, j) * v[k];
      out.N_bar_arg(i, j) = s;
    }
  return out;
}

std::pair<Tensor3c, Tensor3c> horizontal_coefficients(const ComplexifiedAlgebra& alg,
                                                      const MetricJet& jet,
                                                      const Eigen::VectorXcd& v,
                                                      const Eigen::MatrixXcd& N) {
  check_dims(alg, jet, v);
  const int n = alg.n();
  const auto aview = detail::make_algebra_view<Complex>(alg);
  const auto jview = detail::plain_view(jet);
  const auto glu = detail::g_transpose_lu(jview);
  const auto terms = detail::horizontal_terms(aview, jview, plain_coords(v), from_eigen(N), glu);
  Tensor3c gamma = detail::assemble_gamma(terms);
  Tensor3c gamma_mixed(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) gamma_mixed(j, i, k) = -alg.lam_mixed_hol(j, i, k);
  return {std::move(gamma), std::move(gamma_mixed)};
}

Tensor3c torsion(const ComplexifiedAlgebra& alg, const MetricJet& jet, const Eigen::VectorXcd& v,
                 const Eigen::MatrixXcd& N) {
  check_dims(alg, jet, v);
  const auto aview = detail::make_algebra_view<Complex>(alg);
  const auto jview = detail::plain_view(jet);
  const auto glu = detail::g_transpose_lu(jview);
  const auto terms = detail::horizontal_terms(aview, jview, plain_coords(v), from_eigen(N), glu);
  return detail::assemble_torsion(aview, terms);
}

ConnectionData chern_rund(const ComplexifiedAlgebra& alg, const MetricJet& jet,
                          const Eigen::VectorXcd& v) {
  check_dims(alg, jet, v);
  const int n = alg.n();
  const auto aview = detail::make_algebra_view<Complex>(alg);
  const auto jview = detail::plain_view(jet);
  const auto glu = detail::g_transpose_lu(jview);
  ConnectionData out;
  const auto N = detail::compute_nonlinear_connection(aview, jview, plain_coords(v), glu,
                                                      &out.solve_residual);
  const auto terms = detail::horizontal_terms(aview, jview, plain_coords(v), N, glu);
  out.N = to_eigen(N);
  out.N_bar_arg.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s -= alg.lam_mixed_hol(i, k, j) * v[k];
      out.N_bar_arg(i, j) = s;
    }
  out.Gamma = detail::assemble_gamma(terms);
  out.Gamma_mixed = Tensor3c(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) out.Gamma_mixed(j, i, k) = -alg.lam_mixed_hol(j, i, k);
  out.T = detail::assemble_torsion(aview, terms);
  return out;
}

Eigen::VectorXcd connection_operator(const ComplexifiedAlgebra& alg, const MetricJet& jet,
                                     const Eigen::VectorXcd& v, const Eigen::VectorXcd& w) {
  return nonlinear_connection(alg, jet, v).N * w;
}

Complex pair_g(const MetricJet& jet, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Complex s = 0.0;
  for (int i = 0; i < jet.g.rows(); ++i)
    for (int j = 0; j < jet.g.cols(); ++j) s += jet.g(i, j) * a[i] * std::conj(b[j]);
  return s;
}

Complex pair_s(const MetricJet& jet, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Complex s = 0.0;
  const Eigen::MatrixXcd g_hol = jet.g_hol();
  for (int i = 0; i < g_hol.rows(); ++i)
    for (int j = 0; j < g_hol.cols(); ++j) s += g_hol(i, j) * a[i] * b[j];
  return s;
}

Complex pair_s_bar(const MetricJet& jet, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Complex s = 0.0;
  for (int i = 0; i < jet.g_antihol.rows(); ++i)
    for (int j = 0; j < jet.g_antihol.cols(); ++j)
      s += jet.g_antihol(i, j) * std::conj(a[i]) * std::conj(b[j]);
  return s;
}

Complex pair_c_plus(const MetricJet& jet, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                    const Eigen::VectorXcd& c) {
  Complex s = 0.0;
  const int n = jet.C_plus.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) s += jet.C_plus(i, j, l) * a[i] * std::conj(b[j]) * c[l];
  return s;
}

Complex pair_c_minus(const MetricJet& jet, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                     const Eigen::VectorXcd& c) {
  Complex s = 0.0;
  const int n = jet.C_minus.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < n; ++t)
        s += jet.C_minus(i, j, t) * a[i] * std::conj(b[j]) * std::conj(c[t]);
  return s;
}

double connection_operator_identity_residual(const ComplexifiedAlgebra& alg, const MetricJet& jet,
                                             const Eigen::VectorXcd& v, int probes,
                                             std::uint64_t seed) {
  const auto conn = nonlinear_connection(alg, jet, v);
  Sampler sampler(seed);
  double res = 0.0;
  for (int s = 0; s < probes; ++s) {
    const Eigen::VectorXcd u = sampler.unit_vector(alg.n());
    const Eigen::VectorXcd w = sampler.unit_vector(alg.n());
    const Eigen::VectorXcd nw = conn.N * w;
    const Complex lhs = pair_g(jet, nw, u);
    const Complex rhs = pair_g(jet, v, bracket_hol_antihol_10(alg, u, w)) +
                        pair_s_bar(jet, u, bracket_hol_antihol_10(alg, v, w));
    res = std::max(res, std::abs(lhs - rhs));
  }
  return res;
}

}  // namespace finsler_lie
