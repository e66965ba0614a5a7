#include "finsler_lie/classify.hpp"

#include <sstream>

#include "finsler_lie/detail/connection_core.hpp"
#include "finsler_lie/sampling.hpp"

namespace finsler_lie {

namespace {

Eigen::VectorXcd bracket_hol_hol(const ComplexifiedAlgebra& alg, const Eigen::VectorXcd& v,
                                 const Eigen::VectorXcd& w) {
  const int n = alg.n();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < n; ++i) {
    Complex s = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += alg.lam_hol(i, j, k) * v[j] * w[k];
    out[i] = s;
  }
  return out;
}

/// Basis-pair grid when n <= 8 (exhaustive by bilinearity), plus optional
/// extra random unit probes.
std::vector<Eigen::VectorXcd> probe_set(int n, int probe_count, std::uint64_t seed) {
  std::vector<Eigen::VectorXcd> probes;
  if (n <= 8)
    for (int i = 0; i < n; ++i) probes.push_back(Eigen::VectorXcd::Unit(n, i));
  Sampler sampler(seed);
  const int want = probe_count > 0 ? probe_count : (n <= 8 ? 0 : 64);
  while (static_cast<int>(probes.size()) < want) probes.push_back(sampler.unit_vector(n));
  return probes;
}

struct ResidualContext {
  MetricJet jet;
  Eigen::VectorXcd n_of_v;    // N(v) v
  Eigen::VectorXcd br_vv;     // [v, vbar]^{1,0}
  Eigen::MatrixXcd N;
};

ResidualContext residual_context(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                                 const Eigen::VectorXcd& v, const DiffConfig& diff) {
  ResidualContext ctx{metric_jet(norm, v, diff), {}, {}, {}};
  const auto conn = nonlinear_connection(alg, ctx.jet, v);
  ctx.N = conn.N;
  ctx.n_of_v = conn.N * v;
  ctx.br_vv = bracket_hol_antihol_10(alg, v, v);
  return ctx;
}

}  // namespace

double kahler_residual(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                       const Eigen::VectorXcd& v, int probe_count, std::uint64_t seed,
                       const DiffConfig& diff) {
  if (v.cwiseAbs().maxCoeff() == 0.0) throw InputError("v must be nonzero");
  const auto ctx = residual_context(alg, norm, v, diff);
  const auto probes = probe_set(alg.n(), probe_count, seed);
  double res = 0.0;
  for (const auto& w : probes)
    for (const auto& u : probes) {
      const Complex term = pair_g(ctx.jet, w, bracket_hol_antihol_10(alg, u, v)) -
                           pair_g(ctx.jet, bracket_hol_hol(alg, v, w), u) -
                           pair_g(ctx.jet, v, bracket_hol_antihol_10(alg, u, w)) -
                           pair_s_bar(ctx.jet, u, bracket_hol_antihol_10(alg, v, w)) -
                           pair_c_plus(ctx.jet, w, u, ctx.n_of_v) +
                           pair_c_minus(ctx.jet, w, u, ctx.br_vv);
      res = std::max(res, std::abs(term));
    }
  return res;
}

double weakly_kahler_residual(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                              const Eigen::VectorXcd& v, int probe_count, std::uint64_t seed,
                              const DiffConfig& diff) {
  if (v.cwiseAbs().maxCoeff() == 0.0) throw InputError("v must be nonzero");
  const auto ctx = residual_context(alg, norm, v, diff);
  const auto probes = probe_set(alg.n(), probe_count, seed);
  double res = 0.0;
  for (const auto& w : probes) {
    const Complex term = pair_g(ctx.jet, w, ctx.br_vv) -
                         pair_g(ctx.jet, bracket_hol_hol(alg, v, w), v) -
                         pair_g(ctx.jet, v, bracket_hol_antihol_10(alg, v, w)) -
                         pair_s(ctx.jet, ctx.n_of_v, w);
    res = std::max(res, std::abs(term));
  }
  return res;
}

std::pair<double, double> gamma_derivative_norms(const ComplexifiedAlgebra& alg,
                                                 const NormSpec& norm, const Eigen::VectorXcd& v,
                                                 const DiffConfig& diff) {
  const int n = alg.n();
  double max_dv = 0.0, max_dvbar = 0.0;
  if (diff.mode == DiffMode::dual && norm.kind() != NormSpec::Kind::custom) {
    // order-4 tensors of F^2 let the Cartan blocks carry their own partials
    const RealDerivs t = f2_derivative_tensors(norm, v, 4, diff);
    const auto aview = detail::make_algebra_view<detail::CDual>(alg);
    const auto jview = detail::dual_view(t, n, /*with_cartan=*/true);
    const auto glu = detail::g_transpose_lu(jview);
    const auto coords = detail::dual_coordinates(v);
    const auto N = detail::compute_nonlinear_connection(aview, jview, coords, glu);
    const auto terms = detail::horizontal_terms(aview, jview, coords, N, glu);
    const auto gamma = detail::assemble_gamma(terms);
    for (const auto& e : gamma.data())
      for (int l = 0; l < n; ++l) {
        const Complex dx(e.re.d.empty() ? 0.0 : e.re.d[2 * l],
                         e.im.d.empty() ? 0.0 : e.im.d[2 * l]);
        const Complex dy(e.re.d.empty() ? 0.0 : e.re.d[2 * l + 1],
                         e.im.d.empty() ? 0.0 : e.im.d[2 * l + 1]);
        max_dv = std::max(max_dv, std::abs(0.5 * (dx - Complex(0, 1) * dy)));
        max_dvbar = std::max(max_dvbar, std::abs(0.5 * (dx + Complex(0, 1) * dy)));
      }
  } else {
    DiffConfig inner = diff;
    inner.mode = DiffMode::fd;
    auto map = [&](const Eigen::VectorXcd& p) {
      const MetricJet jet = metric_jet(norm, p, inner);
      const auto conn = nonlinear_connection(alg, jet, p);
      const auto [gamma, gamma_mixed] = horizontal_coefficients(alg, jet, p, conn.N);
      (void)gamma_mixed;
      return gamma.data();
    };
    const MapJacobian jac = fd_map_jacobian(map, v, /*inner_order=*/3, inner);
    for (int l = 0; l < n; ++l)
      for (const auto& e : jac.d_dv[l]) max_dv = std::max(max_dv, std::abs(e));
    for (int l = 0; l < n; ++l)
      for (const auto& e : jac.d_dvbar[l]) max_dvbar = std::max(max_dvbar, std::abs(e));
  }
  return {max_dv, max_dvbar};
}

BerwaldResidual berwald_residual(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                                 int sample_count, std::uint64_t seed, const DiffConfig& diff) {
  if (sample_count < 2) throw InputError("berwald residual needs at least 2 samples");
  Sampler sampler(seed);
  std::vector<Eigen::VectorXcd> samples;
  for (int s = 0; s < sample_count; ++s) samples.push_back(sampler.unit_vector(alg.n()));

  BerwaldResidual out;
  std::vector<Tensor3c> gammas;
  for (const auto& v : samples) {
    const MetricJet jet = metric_jet(norm, v, diff);
    const auto conn = nonlinear_connection(alg, jet, v);
    gammas.push_back(horizontal_coefficients(alg, jet, v, conn.N).first);
    const auto [dv, dvbar] = gamma_derivative_norms(alg, norm, v, diff);
    out.max_dv = std::max(out.max_dv, dv);
    out.max_dvbar = std::max(out.max_dvbar, dvbar);
  }
  for (std::size_t a = 0; a < gammas.size(); ++a)
    for (std::size_t b = a + 1; b < gammas.size(); ++b)
      for (std::size_t q = 0; q < gammas[a].data().size(); ++q)
        out.spread = std::max(out.spread, std::abs(gammas[a].data()[q] - gammas[b].data()[q]));
  return out;
}

ClassificationReport classify(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                              const ClassifyConfig& cfg) {
  const int n = alg.n();
  ClassificationReport rep;
  rep.tol_cls = cfg.tol_cls;
  rep.probe_count = cfg.probe_count;
  rep.seed = cfg.seed;

  std::vector<Eigen::VectorXcd> directions;
  for (int i = 0; i < n; ++i) directions.push_back(Eigen::VectorXcd::Unit(n, i));
  for (const auto& v : quasi_unit_vectors(n, cfg.v_samples)) directions.push_back(v);
  rep.v_samples = static_cast<int>(directions.size());

  for (const auto& v : directions) {
    rep.kahler_residual =
        std::max(rep.kahler_residual, kahler_residual(alg, norm, v, cfg.probe_count, cfg.seed, cfg.diff));
    rep.weakly_kahler_residual = std::max(
        rep.weakly_kahler_residual,
        weakly_kahler_residual(alg, norm, v, cfg.probe_count, cfg.seed, cfg.diff));
  }
  rep.berwald = berwald_residual(alg, norm, cfg.berwald_samples, cfg.seed, cfg.diff);

  Sampler sampler(cfg.seed + 1);
  for (int s = 0; s < cfg.bisectional_samples; ++s) {
    const Eigen::VectorXcd v = sampler.unit_vector(n);
    const Eigen::VectorXcd w = sampler.unit_vector(n);
    rep.bisectional_max =
        std::max(rep.bisectional_max, std::abs(bisectional(alg, norm, v, w, cfg.diff).value));
  }

  rep.is_complex_group_type = is_complex_group_type(alg).is_complex_group_type;
  rep.is_abelian = is_abelian(alg);
  rep.verdict_kahler = rep.kahler_residual < cfg.tol_cls;
  rep.verdict_weakly_kahler = rep.weakly_kahler_residual < cfg.tol_cls;
  rep.verdict_berwald = rep.berwald.total() < cfg.tol_cls;
  rep.kahler_implies_weakly_ok =
      !rep.verdict_kahler || rep.weakly_kahler_residual < 10.0 * cfg.tol_cls;
  return rep;
}

TheoremReport verify_complex_group_theorems(const ComplexifiedAlgebra& alg, const NormSpec& norm,
                                            const ClassifyConfig& cfg) {
  const auto type = is_complex_group_type(alg);
  if (!type.is_complex_group_type) {
    const int n = alg.n();
    double best = -1.0;
    int bi = 0, bj = 0, bk = 0;
    bool anti = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (std::abs(alg.lam_mixed_hol(i, j, k)) > best) {
            best = std::abs(alg.lam_mixed_hol(i, j, k));
            bi = i; bj = j; bk = k; anti = false;
          }
          if (std::abs(alg.lam_mixed_anti(i, j, k)) > best) {
            best = std::abs(alg.lam_mixed_anti(i, j, k));
            bi = i; bj = j; bk = k; anti = true;
          }
        }
    std::ostringstream os;
    os << "algebra is not of complex-group type: " << (anti ? "lambda^{ibar}" : "lambda^i")
       << "_{j kbar} entry (i=" << bi + 1 << ", j=" << bj + 1 << ", k=" << bk + 1 << ") = " << best;
    throw PreconditionError(os.str());
  }

  const int n = alg.n();
  TheoremReport rep;
  Sampler sampler(cfg.seed);
  for (int s = 0; s < cfg.theorem_gamma_samples; ++s) {
    const Eigen::VectorXcd v = sampler.unit_vector(n);
    const MetricJet jet = metric_jet(norm, v, cfg.diff);
    const auto conn = nonlinear_connection(alg, jet, v);
    const auto gamma = horizontal_coefficients(alg, jet, v, conn.N).first;
    rep.gamma_max = std::max(rep.gamma_max, max_abs(gamma));
    if (s < 4) {
      const Tensor3c tor = torsion(alg, jet, v, conn.N);
      double res = 0.0;
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k)
            res = std::max(res, std::abs(tor(j, i, k) + 0.5 * alg.lam_hol(j, i, k)));
      rep.torsion_vs_minus_half_lambda = std::max(rep.torsion_vs_minus_half_lambda, res);
    }
  }
  for (int s = 0; s < cfg.theorem_bisectional_samples; ++s) {
    const Eigen::VectorXcd v = sampler.unit_vector(n);
    const Eigen::VectorXcd w = sampler.unit_vector(n);
    rep.bisectional_max =
        std::max(rep.bisectional_max, std::abs(bisectional(alg, norm, v, w, cfg.diff).value));
  }

  rep.is_abelian = is_abelian(alg);
  double kres = 0.0;
  for (const auto& v : quasi_unit_vectors(n, 8))
    kres = std::max(kres, kahler_residual(alg, norm, v, cfg.probe_count, cfg.seed, cfg.diff));
  rep.verdict_kahler = kres < cfg.tol_cls;
  rep.kahler_iff_abelian_consistent = (rep.verdict_kahler == rep.is_abelian);
  rep.pass = rep.gamma_max < 1e-8 && rep.bisectional_max < 1e-6 &&
             rep.torsion_vs_minus_half_lambda < 1e-10 && rep.kahler_iff_abelian_consistent;
  return rep;
}

}  // namespace finsler_lie
