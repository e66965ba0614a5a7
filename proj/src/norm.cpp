#include "finsler_lie/norm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "finsler_lie/algebra.hpp"
#include "finsler_lie/sampling.hpp"

namespace finsler_lie {

namespace {

Eigen::MatrixXcd require_hermitian_pd(Eigen::MatrixXcd H) {
  if (H.rows() != H.cols()) throw InputError("norm matrix must be square");
  const double asym = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kTolStructural) {
    std::ostringstream os;
    os << "norm matrix is not Hermitian (asymmetry " << asym << ")";
    throw InputError(os.str());
  }
  H = 0.5 * (H + H.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw ParameterError("norm matrix must be positive definite");
  return H;
}

struct F2Fn {
  const NormSpec* norm;
  template <class RT>
  RT operator()(const std::vector<Cx<RT>>& v) const {
    return norm->f2_generic<RT>(v);
  }
};

}  // namespace

NormSpec NormSpec::hermitian(Eigen::MatrixXcd H) {
  NormSpec s;
  s.kind_ = Kind::hermitian;
  s.H_ = require_hermitian_pd(std::move(H));
  s.n_ = static_cast<int>(s.H_.rows());
  return s;
}

NormSpec NormSpec::perturbed_hermitian(Eigen::MatrixXcd H, double epsilon, int p) {
  if (!(epsilon >= 0.0)) throw ParameterError("epsilon must be >= 0");
  if (p < 2) throw ParameterError("p must be an integer >= 2");
  NormSpec s;
  s.kind_ = Kind::perturbed_hermitian;
  s.H_ = require_hermitian_pd(std::move(H));
  s.n_ = static_cast<int>(s.H_.rows());
  s.epsilon_ = epsilon;
  s.p_ = p;
  return s;
}

NormSpec NormSpec::custom(int n, std::function<double(const Eigen::VectorXcd&)> f2) {
  if (n <= 0) throw InputError("custom norm dimension must be positive");
  NormSpec s;
  s.kind_ = Kind::custom;
  s.n_ = n;
  s.custom_ = std::move(f2);
  return s;
}

double NormSpec::f2(const Eigen::VectorXcd& v) const {
  if (static_cast<int>(v.size()) != n_) throw InputError("direction dimension mismatch");
  std::vector<Cx<double>> coords(n_);
  for (int i = 0; i < n_; ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
      throw InputError("non-finite direction component");
    coords[i] = Cx<double>(v[i].real(), v[i].imag());
  }
  return f2_generic<double>(coords);
}

double f_squared(const NormSpec& norm, const Eigen::VectorXcd& v) { return norm.f2(v); }

RealDerivs f2_derivative_tensors(const NormSpec& norm, const Eigen::VectorXcd& v, int order,
                                 const DiffConfig& cfg) {
  if (static_cast<int>(v.size()) != norm.dim()) throw InputError("direction dimension mismatch");
  DiffConfig effective = cfg;
  if (norm.kind() == NormSpec::Kind::custom) effective.mode = DiffMode::fd;
  return derivative_tensors(F2Fn{&norm}, v, order, effective);
}

namespace {

// Wirtinger blocks from the real derivative tensors
void assemble_blocks(const RealDerivs& t, int n, Eigen::MatrixXcd& g, Eigen::MatrixXcd& g_antihol,
                     Tensor3c& c_plus, Tensor3c& c_minus) {
  g.resize(n, n);
  g_antihol.resize(n, n);
  c_plus = Tensor3c(n);
  c_minus = Tensor3c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g(i, j) = wirtinger(t, {{i, false}, {j, true}});
      g_antihol(i, j) = wirtinger(t, {{i, true}, {j, true}});
      for (int l = 0; l < n; ++l) {
        c_plus(i, j, l) = wirtinger(t, {{i, false}, {j, true}, {l, false}});
        c_minus(i, j, l) = wirtinger(t, {{i, false}, {j, true}, {l, true}});
      }
    }
}

}  // namespace

MetricJet metric_jet(const NormSpec& norm, const Eigen::VectorXcd& v, const DiffConfig& cfg) {
  if (v.cwiseAbs().maxCoeff() == 0.0)
    throw InputError("metric jet is undefined at v = 0 (the zero section is removed)");
  const int n = norm.dim();
  RealDerivs t = f2_derivative_tensors(norm, v, 3, cfg);

  MetricJet jet;
  jet.F2 = t.d0;
  assemble_blocks(t, n, jet.g, jet.g_antihol, jet.C_plus, jet.C_minus);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (jet.g + jet.g.adjoint().eval()));
  jet.min_g_eigenvalue = es.eigenvalues().minCoeff();
  const double max_eig = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues().cwiseAbs().minCoeff() <= kTolStructural * std::max(1.0, max_eig)) {
    std::ostringstream os;
    os << "Levi matrix is singular at this direction (smallest eigenvalue "
       << jet.min_g_eigenvalue << ")";
    throw StronglyPseudoconvexViolation(os.str(), jet.min_g_eigenvalue);
  }
  jet.g_inv = jet.g.partialPivLu().inverse();
  return jet;
}

double check_homogeneity(const NormSpec& norm, const Eigen::VectorXcd& v, Complex lambda) {
  const double f2v = norm.f2(v);
  if (f2v == 0.0) throw InputError("homogeneity check requires v != 0");
  const double lhs = norm.f2(lambda * v);
  return std::abs(lhs - std::norm(lambda) * f2v) / f2v;
}

double check_pseudoconvexity(const NormSpec& norm, int sample_count, std::uint64_t seed,
                             const DiffConfig& cfg) {
  if (sample_count < 1) throw InputError("sample_count must be >= 1");
  Sampler sampler(seed);
  double min_eig = std::numeric_limits<double>::infinity();
  for (int s = 0; s < sample_count; ++s) {
    const Eigen::VectorXcd v = sampler.unit_vector(norm.dim());
    const RealDerivs t = f2_derivative_tensors(norm, v, 2, cfg);
    Eigen::MatrixXcd g(norm.dim(), norm.dim());
    for (int i = 0; i < norm.dim(); ++i)
      for (int j = 0; j < norm.dim(); ++j) g(i, j) = wirtinger(t, {{i, false}, {j, true}});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (g + g.adjoint().eval()));
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  return min_eig;
}

EulerResiduals euler_residuals(const MetricJet& jet, const Eigen::VectorXcd& v) {
  const int n = static_cast<int>(v.size());
  EulerResiduals r;
  Complex s = 0.0;  // g_{i jbar} v^i vbar^j
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += jet.g(i, j) * v[i] * std::conj(v[j]);
  r.g_vv = std::abs(s - jet.F2) / (jet.F2 != 0.0 ? jet.F2 : 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex cp = 0.0, cm = 0.0;
      for (int l = 0; l < n; ++l) {
        cp += jet.C_plus(i, j, l) * v[l];
        cm += jet.C_minus(i, j, l) * std::conj(v[l]);
      }
      r.c_plus_v = std::max(r.c_plus_v, std::abs(cp));
      r.c_minus_v = std::max(r.c_minus_v, std::abs(cm));
    }
  for (int j = 0; j < n; ++j)
    for (int t = 0; t < n; ++t) {
      Complex acc = 0.0;
      for (int i = 0; i < n; ++i) acc += jet.C_minus(i, j, t) * v[i];
      r.c_antihol = std::max(r.c_antihol, std::abs(acc - jet.g_antihol(j, t)));
    }
  return r;
}

namespace detail {

JetView<Complex> plain_view(const MetricJet& jet) {
  JetView<Complex> view;
  view.g = from_eigen(jet.g);
  view.g_antihol = from_eigen(jet.g_antihol);
  view.C_plus = jet.C_plus;
  view.C_minus = jet.C_minus;
  return view;
}

JetView<CDual> dual_view(const RealDerivs& t, int n, bool with_cartan) {
  const int m = 2 * n;
  auto block = [&](std::vector<WIdx> idx) {
    const Complex value = wirtinger(t, idx);
    Dual<double> re(value.real(), m), im(value.imag(), m);
    for (int a = 0; a < m; ++a) {
      const Complex da = wirtinger(t, idx, a);
      re.d[a] = da.real();
      im.d[a] = da.imag();
    }
    return CDual{re, im};
  };

  JetView<CDual> view;
  view.g = GMat<CDual>(n, n);
  view.g_antihol = GMat<CDual>(n, n);
  view.has_cartan = with_cartan;
  if (with_cartan) {
    view.C_plus = GT3<CDual>(n);
    view.C_minus = GT3<CDual>(n);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      view.g(i, j) = block({{i, false}, {j, true}});
      view.g_antihol(i, j) = block({{i, true}, {j, true}});
      if (with_cartan)
        for (int l = 0; l < n; ++l) {
          view.C_plus(i, j, l) = block({{i, false}, {j, true}, {l, false}});
          view.C_minus(i, j, l) = block({{i, false}, {j, true}, {l, true}});
        }
    }
  return view;
}

std::vector<Cx<Dual<double>>> dual_coordinates(const Eigen::VectorXcd& v) {
  const int n = static_cast<int>(v.size());
  const int m = 2 * n;
  std::vector<CDual> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = CDual{Dual<double>::seeded(v[i].real(), 2 * i, m),
                   Dual<double>::seeded(v[i].imag(), 2 * i + 1, m)};
  return out;
}

}  // namespace detail

}  // namespace finsler_lie
