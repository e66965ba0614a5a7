#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "finsler_lie/derivatives.hpp"
#include "finsler_lie/dual.hpp"
#include "finsler_lie/errors.hpp"
#include "finsler_lie/linalg.hpp"

namespace finsler_lie {

inline constexpr double kTolJetDual = 1e-8;
inline constexpr double kTolJetFd = 1e-5;

/// A complex Minkowski norm on g^{1,0}, given through its squared value
/// F^2(v). Builtin kinds evaluate on dual scalars and therefore support both
/// differentiation engines; custom black-box norms are fd-only.
class NormSpec {
public:
  enum class Kind { hermitian, perturbed_hermitian, custom };

  /// F^2(v) = v_dagger H v with H Hermitian positive definite.
  static NormSpec hermitian(Eigen::MatrixXcd H);
  /// F^2(v) = H(v, vbar) + eps * (sum_i |v^i|^{2p})^{1/p}, eps >= 0, p >= 2.
  static NormSpec perturbed_hermitian(Eigen::MatrixXcd H, double epsilon, int p);
  static NormSpec custom(int n, std::function<double(const Eigen::VectorXcd&)> f2);

  Kind kind() const { return kind_; }
  int dim() const { return n_; }
  const Eigen::MatrixXcd& h() const { return H_; }
  double epsilon() const { return epsilon_; }
  int p() const { return p_; }

  double f2(const Eigen::VectorXcd& v) const;

  template <class RT>
  RT f2_generic(const std::vector<Cx<RT>>& v) const {
    switch (kind_) {
      case Kind::hermitian:
        return hermitian_part(v);
      case Kind::perturbed_hermitian: {
        RT r = hermitian_part(v);
        if (epsilon_ > 0.0) {
          RT s{};
          for (const auto& vi : v) {
            RT u = norm_sq(vi);
            RT up = u;
            for (int q = 1; q < p_; ++q) up = up * u;
            s = s + up;
          }
          r = r + epsilon_ * pow(s, 1.0 / p_);
        }
        return r;
      }
      case Kind::custom:
        if constexpr (std::is_same_v<RT, double>) {
          Eigen::VectorXcd ev(n_);
          for (int i = 0; i < n_; ++i) ev[i] = Complex(v[i].re, v[i].im);
          return custom_(ev);
        } else {
          throw InputError("custom norms support only the fd differentiation engine");
        }
    }
    throw InputError("invalid norm kind");
  }

private:
  template <class RT>
  RT hermitian_part(const std::vector<Cx<RT>>& v) const {
    RT r{};
    for (int i = 0; i < n_; ++i) {
      r = r + H_(i, i).real() * norm_sq(v[i]);
      for (int j = i + 1; j < n_; ++j) {
        Cx<RT> hij{RT(H_(i, j).real()), RT(H_(i, j).imag())};
        Cx<RT> t = hij * v[i] * conj(v[j]);
        r = r + 2.0 * t.re;
      }
    }
    return r;
  }

  Kind kind_ = Kind::hermitian;
  int n_ = 0;
  Eigen::MatrixXcd H_;
  double epsilon_ = 0.0;
  int p_ = 2;
  std::function<double(const Eigen::VectorXcd&)> custom_;
};

/// Second- and third-order Wirtinger data of F^2 at a direction v:
/// the fundamental tensor g, its inverse, the Cartan tensors and the pure
/// second/third antiholomorphic blocks.
struct MetricJet {
  double F2 = 0.0;
  Eigen::MatrixXcd g;          // g_{i jbar}
  Eigen::MatrixXcd g_inv;      // g^{jbar i} as the plain inverse of g
  Eigen::MatrixXcd g_antihol;  // g_{jbar tbar} = d2 F^2 / dvbar^j dvbar^t
  Tensor3c C_plus;             // C_{i jbar l}
  Tensor3c C_minus;            // C_{i jbar tbar}
  double min_g_eigenvalue = 0.0;

  /// Symmetric product block g_{ij} = d2 F^2/dv^i dv^j = conj(g_antihol).
  Eigen::MatrixXcd g_hol() const { return g_antihol.conjugate(); }
};

double f_squared(const NormSpec& norm, const Eigen::VectorXcd& v);

MetricJet metric_jet(const NormSpec& norm, const Eigen::VectorXcd& v,
                     const DiffConfig& cfg = DiffConfig{});

/// |F^2(lambda v) - |lambda|^2 F^2(v)| / F^2(v).
double check_homogeneity(const NormSpec& norm, const Eigen::VectorXcd& v, Complex lambda);

/// Minimum eigenvalue of g over `sample_count` seeded unit-sphere directions.
double check_pseudoconvexity(const NormSpec& norm, int sample_count, std::uint64_t seed,
                             const DiffConfig& cfg = DiffConfig{});

struct EulerResiduals {
  double g_vv = 0.0;        // |g_{i jbar} v^i vbar^j - F^2| / F^2
  double c_plus_v = 0.0;    // max_l |C_{i jbar l} v^l|
  double c_minus_v = 0.0;   // max |C_{i jbar tbar} vbar^t|
  double c_antihol = 0.0;   // max |C_{i jbar tbar} v^i - g_{jbar tbar}|
  double max() const { return std::max(std::max(g_vv, c_plus_v), std::max(c_minus_v, c_antihol)); }
};

EulerResiduals euler_residuals(const MetricJet& jet, const Eigen::VectorXcd& v);

namespace detail {

/// Jet blocks needed by the connection formulas, over a generic scalar.
template <class CT>
struct JetView {
  GMat<CT> g;          // g_{i jbar}
  GMat<CT> g_antihol;  // g_{jbar tbar}
  GT3<CT> C_plus;      // C_{i jbar l}
  GT3<CT> C_minus;     // C_{i jbar tbar}
  bool has_cartan = true;
};

/// Plain-scalar view of a computed MetricJet.
JetView<Complex> plain_view(const MetricJet& jet);

using CDual = Cx<Dual<double>>;

/// Jet blocks as first-order dual scalars in the 2n real coordinates of v:
/// values from the order-k Wirtinger blocks, partials from order k+1.
/// `tensors` must hold real derivative tensors up to order 3 (for g-level
/// propagation) or 4 (to propagate the Cartan tensors as well).
JetView<CDual> dual_view(const RealDerivs& tensors, int n, bool with_cartan);

std::vector<Cx<Dual<double>>> dual_coordinates(const Eigen::VectorXcd& v);

}  // namespace detail

/// Real derivative tensors of F^2 at v, by the configured engine.
RealDerivs f2_derivative_tensors(const NormSpec& norm, const Eigen::VectorXcd& v, int order,
                                 const DiffConfig& cfg);

}  // namespace finsler_lie
