#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "finsler_lie/dual.hpp"
#include "finsler_lie/errors.hpp"
#include "finsler_lie/linalg.hpp"

namespace finsler_lie {

enum class DiffMode { dual, fd };

/// Configuration of the Wirtinger differentiation engine. All derivatives are
/// taken with respect to the 2n real coordinates (x, y), v = x + iy, and
/// combined as d/dv = (dx - i dy)/2, d/dv̄ = (dx + i dy)/2.
struct DiffConfig {
  DiffMode mode = DiffMode::dual;
  /// Absolute step for first-order central differences; 0 selects the default
  /// cbrt(machine epsilon) * max(1, |v|_inf). Order-k stencils grade the step
  /// as step^(3/(k+2)) to balance truncation against roundoff.
  double fd_step = 0.0;
  bool richardson = true;
};

inline DiffConfig dual_mode() { return DiffConfig{DiffMode::dual, 0.0, true}; }
inline DiffConfig fd_mode() { return DiffConfig{DiffMode::fd, 0.0, true}; }

/// Dense real partial-derivative tensors of a scalar function of m real
/// variables, up to `order` (at most 4).
struct RealDerivs {
  int m = 0;
  int order = 0;
  double d0 = 0.0;
  std::vector<double> d1, d2, d3, d4;

  double D1(int a) const { return d1[a]; }
  double D2(int a, int b) const { return d2[static_cast<std::size_t>(a) * m + b]; }
  double D3(int a, int b, int c) const {
    return d3[(static_cast<std::size_t>(a) * m + b) * m + c];
  }
  double D4(int a, int b, int c, int e) const {
    return d4[((static_cast<std::size_t>(a) * m + b) * m + c) * m + e];
  }

  void allocate() {
    d1.assign(m, 0.0);
    if (order >= 2) d2.assign(static_cast<std::size_t>(m) * m, 0.0);
    if (order >= 3) d3.assign(static_cast<std::size_t>(m) * m * m, 0.0);
    if (order >= 4) d4.assign(static_cast<std::size_t>(m) * m * m * m, 0.0);
  }
};

namespace detail {

using Jet1 = Dual<double>;
using Jet2 = Dual<Jet1>;
using Jet3 = Dual<Jet2>;
using Jet4 = Dual<Jet3>;

template <class T>
const T& dget(const Dual<T>& x, int a) {
  static const T zero{};
  return x.d.empty() ? zero : x.d[a];
}

template <class Fn, class RT>
RT eval_on_coords(const Fn& fn, const std::vector<double>& x, int n) {
  std::vector<Cx<RT>> v(n);
  const int m = 2 * n;
  for (int i = 0; i < n; ++i) {
    if constexpr (std::is_same_v<RT, double>) {
      (void)m;
      v[i] = Cx<RT>(x[2 * i], x[2 * i + 1]);
    } else {
      v[i] = Cx<RT>(RT::seeded(x[2 * i], 2 * i, m), RT::seeded(x[2 * i + 1], 2 * i + 1, m));
    }
  }
  return fn(v);
}

template <class Fn>
RealDerivs dual_derivs_impl(const Fn& fn, const std::vector<double>& x, int n, int order) {
  RealDerivs out;
  out.m = 2 * n;
  out.order = order;
  out.allocate();
  const int m = out.m;
  switch (order) {
    case 1: {
      auto r = eval_on_coords<Fn, Jet1>(fn, x, n);
      out.d0 = leaf_value(r);
      for (int a = 0; a < m; ++a) out.d1[a] = leaf_value(dget(r, a));
      break;
    }
    case 2: {
      auto r = eval_on_coords<Fn, Jet2>(fn, x, n);
      out.d0 = leaf_value(r);
      for (int a = 0; a < m; ++a) {
        const auto& ra = dget(r, a);
        out.d1[a] = leaf_value(ra);
        for (int b = 0; b < m; ++b)
          out.d2[static_cast<std::size_t>(a) * m + b] = leaf_value(dget(ra, b));
      }
      break;
    }
    case 3: {
      auto r = eval_on_coords<Fn, Jet3>(fn, x, n);
      out.d0 = leaf_value(r);
      for (int a = 0; a < m; ++a) {
        const auto& ra = dget(r, a);
        out.d1[a] = leaf_value(ra);
        for (int b = 0; b < m; ++b) {
          const auto& rab = dget(ra, b);
          out.d2[static_cast<std::size_t>(a) * m + b] = leaf_value(rab);
          for (int c = 0; c < m; ++c)
            out.d3[(static_cast<std::size_t>(a) * m + b) * m + c] = leaf_value(dget(rab, c));
        }
      }
      break;
    }
    case 4: {
      auto r = eval_on_coords<Fn, Jet4>(fn, x, n);
      out.d0 = leaf_value(r);
      for (int a = 0; a < m; ++a) {
        const auto& ra = dget(r, a);
        out.d1[a] = leaf_value(ra);
        for (int b = 0; b < m; ++b) {
          const auto& rab = dget(ra, b);
          out.d2[static_cast<std::size_t>(a) * m + b] = leaf_value(rab);
          for (int c = 0; c < m; ++c) {
            const auto& rabc = dget(rab, c);
            out.d3[(static_cast<std::size_t>(a) * m + b) * m + c] = leaf_value(rabc);
            for (int e = 0; e < m; ++e)
              out.d4[((static_cast<std::size_t>(a) * m + b) * m + c) * m + e] =
                  leaf_value(dget(rabc, e));
          }
        }
      }
      break;
    }
    default:
      throw InputError("dual engine supports derivative orders 1..4");
  }
  return out;
}

// step for an order-k central-difference stencil, graded from the first-order
// step; Richardson extrapolation cancels the h^2 truncation term, which moves
// the roundoff/truncation balance to larger steps
inline double graded_step(double rel_first_order, int k, double scale, bool richardson) {
  const double expo = richardson ? 3.0 / (4.0 + k) : 3.0 / (2.0 + k);
  return std::pow(rel_first_order, expo) * scale;
}

template <class F>
double central_d1(const F& f, std::vector<double> x, int a, double h) {
  x[a] += h;
  const double fp = f(x);
  x[a] -= 2 * h;
  const double fm = f(x);
  return (fp - fm) / (2 * h);
}

template <class F>
double central_d2(const F& f, std::vector<double> x, int a, int b, double h, double f0) {
  if (a == b) {
    x[a] += h;
    const double fp = f(x);
    x[a] -= 2 * h;
    const double fm = f(x);
    return (fp - 2 * f0 + fm) / (h * h);
  }
  x[a] += h; x[b] += h;
  const double fpp = f(x);
  x[b] -= 2 * h;
  const double fpm = f(x);
  x[a] -= 2 * h;
  const double fmm = f(x);
  x[b] += 2 * h;
  const double fmp = f(x);
  return (fpp - fpm - fmp + fmm) / (4 * h * h);
}

template <class F>
double central_d3(const F& f, const std::vector<double>& x, int a, int b, int c, double h) {
  auto d2_at = [&](std::vector<double> y) {
    const double f0 = f(y);
    return central_d2(f, std::move(y), a, b, h, f0);
  };
  std::vector<double> xp = x, xm = x;
  xp[c] += h;
  xm[c] -= h;
  return (d2_at(xp) - d2_at(xm)) / (2 * h);
}

// one Richardson step for an O(h^2)-accurate estimator
template <class Est>
double richardson2(const Est& est, double h) {
  return (4.0 * est(h / 2) - est(h)) / 3.0;
}

template <class Fn>
RealDerivs fd_derivs_impl(const Fn& fn, const std::vector<double>& x0, int n, int order,
                          double rel_step, bool richardson) {
  RealDerivs out;
  out.m = 2 * n;
  out.order = order;
  out.allocate();
  const int m = out.m;
  double scale = 1.0;
  for (double xi : x0) scale = std::max(scale, std::abs(xi));
  auto f = [&](const std::vector<double>& x) { return eval_on_coords<Fn, double>(fn, x, n); };

  out.d0 = f(x0);
  const double h1 = rel_step * scale;
  for (int a = 0; a < m; ++a) {
    auto est = [&](double h) { return central_d1(f, x0, a, h); };
    out.d1[a] = richardson ? richardson2(est, h1) : est(h1);
  }
  if (order >= 2) {
    const double h2 = graded_step(rel_step, 2, scale, richardson);
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        auto est = [&](double h) { return central_d2(f, x0, a, b, h, out.d0); };
        const double val = richardson ? richardson2(est, h2) : est(h2);
        out.d2[static_cast<std::size_t>(a) * m + b] = val;
        out.d2[static_cast<std::size_t>(b) * m + a] = val;
      }
  }
  if (order >= 3) {
    const double h3 = graded_step(rel_step, 3, scale, richardson);
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b)
        for (int c = b; c < m; ++c) {
          auto est = [&](double h) { return central_d3(f, x0, a, b, c, h); };
          const double val = richardson ? richardson2(est, h3) : est(h3);
          const std::array<int, 3> idx = {a, b, c};
          std::array<int, 3> p = idx;
          std::sort(p.begin(), p.end());
          do {
            out.d3[(static_cast<std::size_t>(p[0]) * m + p[1]) * m + p[2]] = val;
          } while (std::next_permutation(p.begin(), p.end()));
        }
  }
  if (order >= 4)
    throw InputError("fd engine computes derivative tensors up to order 3; "
                     "differentiate the assembled map instead");
  return out;
}

}  // namespace detail

/// Derivative tensors of fn (a functor evaluable on Cx<double> and on nested
/// dual scalars) at v, by the engine selected in cfg.
template <class Fn>
RealDerivs derivative_tensors(const Fn& fn, const Eigen::VectorXcd& v, int order,
                              const DiffConfig& cfg) {
  const int n = static_cast<int>(v.size());
  std::vector<double> x(2 * n);
  double scale = 1.0;
  for (int i = 0; i < n; ++i) {
    x[2 * i] = v[i].real();
    x[2 * i + 1] = v[i].imag();
    scale = std::max({scale, std::abs(x[2 * i]), std::abs(x[2 * i + 1])});
  }
  if (cfg.mode == DiffMode::dual) return detail::dual_derivs_impl(fn, x, n, order);
  const double rel = cfg.fd_step > 0 ? cfg.fd_step / scale
                                     : std::cbrt(std::numeric_limits<double>::epsilon());
  return detail::fd_derivs_impl(fn, x, n, order, rel, cfg.richardson);
}

/// One Wirtinger index: a holomorphic (d/dv^i) or antiholomorphic (d/dv̄^i) slot.
struct WIdx {
  int i;
  bool barred;
};

/// Mixed Wirtinger derivative of the function whose real tensors are `t`,
/// with an optional trailing plain real axis (used to attach first-order
/// real partials to a Wirtinger block).
inline Complex wirtinger(const RealDerivs& t, const std::vector<WIdx>& idx, int real_tail = -1) {
  const int k = static_cast<int>(idx.size());
  const int total = k + (real_tail >= 0 ? 1 : 0);
  Complex sum = 0.0;
  const int combos = 1 << k;
  for (int mask = 0; mask < combos; ++mask) {
    Complex coeff = 1.0;
    std::array<int, 5> axes{};
    for (int t2 = 0; t2 < k; ++t2) {
      const bool y_axis = (mask >> t2) & 1;
      axes[t2] = 2 * idx[t2].i + (y_axis ? 1 : 0);
      if (!y_axis)
        coeff *= 0.5;
      else
        coeff *= idx[t2].barred ? Complex(0.0, 0.5) : Complex(0.0, -0.5);
    }
    if (real_tail >= 0) axes[k] = real_tail;
    double dval = 0.0;
    switch (total) {
      case 1: dval = t.D1(axes[0]); break;
      case 2: dval = t.D2(axes[0], axes[1]); break;
      case 3: dval = t.D3(axes[0], axes[1], axes[2]); break;
      case 4: dval = t.D4(axes[0], axes[1], axes[2], axes[3]); break;
      default: throw InputError("unsupported Wirtinger derivative order");
    }
    sum += coeff * dval;
  }
  return sum;
}

/// First Wirtinger derivatives of a black-box map v -> C^K by central
/// differences over the 2n real coordinates. Used as the in-repo oracle for
/// the dual-propagated derivative paths. `inner_order` is the derivative
/// order already present inside the map (grading the step accordingly).
struct MapJacobian {
  std::vector<Complex> value;                 // K entries
  std::vector<std::vector<Complex>> d_dv;     // [l][entry], l = 0..n-1
  std::vector<std::vector<Complex>> d_dvbar;  // [t][entry]
};

template <class MapFn>
MapJacobian fd_map_jacobian(const MapFn& fn, const Eigen::VectorXcd& v, int inner_order,
                            const DiffConfig& cfg) {
  const int n = static_cast<int>(v.size());
  double scale = 1.0;
  for (int i = 0; i < n; ++i)
    scale = std::max({scale, std::abs(v[i].real()), std::abs(v[i].imag())});
  const double rel = cfg.fd_step > 0 ? cfg.fd_step / scale
                                     : std::cbrt(std::numeric_limits<double>::epsilon());
  const double h0 = detail::graded_step(rel, inner_order + 1, scale, cfg.richardson);

  std::vector<Complex> f0;
  try {
    f0 = fn(v);
  } catch (const StronglyPseudoconvexViolation& e) {
    throw NumericalDerivativeError(std::string("map evaluation failed at base point: ") + e.what());
  }
  const std::size_t K = f0.size();
  MapJacobian out;
  out.value = f0;
  out.d_dv.assign(n, std::vector<Complex>(K));
  out.d_dvbar.assign(n, std::vector<Complex>(K));

  auto axis_diff = [&](int axis, double h) {
    Eigen::VectorXcd vp = v, vm = v;
    const Complex dz = (axis % 2 == 0) ? Complex(h, 0) : Complex(0, h);
    vp[axis / 2] += dz;
    vm[axis / 2] -= dz;
    std::vector<Complex> fp, fm;
    try {
      fp = fn(vp);
      fm = fn(vm);
    } catch (const StronglyPseudoconvexViolation& e) {
      throw NumericalDerivativeError(
          std::string("map evaluation failed at a stencil point (step ") + std::to_string(h) +
          "): " + e.what());
    }
    std::vector<Complex> d(K);
    for (std::size_t q = 0; q < K; ++q) d[q] = (fp[q] - fm[q]) / (2 * h);
    return d;
  };

  for (int axis = 0; axis < 2 * n; ++axis) {
    std::vector<Complex> da;
    if (cfg.richardson) {
      auto dh = axis_diff(axis, h0);
      auto dh2 = axis_diff(axis, h0 / 2);
      da.resize(K);
      for (std::size_t q = 0; q < K; ++q) da[q] = (4.0 * dh2[q] - dh[q]) / 3.0;
    } else {
      da = axis_diff(axis, h0);
    }
    const int i = axis / 2;
    const Complex cv = (axis % 2 == 0) ? Complex(0.5, 0) : Complex(0, -0.5);
    const Complex cb = (axis % 2 == 0) ? Complex(0.5, 0) : Complex(0, 0.5);
    for (std::size_t q = 0; q < K; ++q) {
      out.d_dv[i][q] += cv * da[q];
      out.d_dvbar[i][q] += cb * da[q];
    }
  }
  return out;
}

namespace detail {

/// Real-curve derivative combination (d/dt f(v+tu) -/+ i d/dt f(v+t iu))/2,
/// which isolates u^l d/dv^l (sign -1) or conj(u)^l d/dv̄^l (sign +1).
template <class MapFn>
std::vector<Complex> fd_directional(const MapFn& fn, const Eigen::VectorXcd& v,
                                    const Eigen::VectorXcd& u, double sign, int inner_order,
                                    const DiffConfig& cfg) {
  const int n = static_cast<int>(v.size());
  double scale = 1.0;
  for (int i = 0; i < n; ++i)
    scale = std::max({scale, std::abs(v[i].real()), std::abs(v[i].imag())});
  const double unorm = u.cwiseAbs().maxCoeff();
  if (unorm < 1e-14) return std::vector<Complex>(fn(v).size());
  const double rel = cfg.fd_step > 0 ? cfg.fd_step / scale
                                     : std::cbrt(std::numeric_limits<double>::epsilon());
  const double h0 = graded_step(rel, inner_order + 1, scale, cfg.richardson) / unorm;

  auto curve_diff = [&](const Eigen::VectorXcd& dir, double h) {
    auto fp = fn(v + h * dir);
    auto fm = fn(v - h * dir);
    std::vector<Complex> d(fp.size());
    for (std::size_t q = 0; q < d.size(); ++q) d[q] = (fp[q] - fm[q]) / (2 * h);
    return d;
  };
  auto along = [&](const Eigen::VectorXcd& dir) {
    if (!cfg.richardson) return curve_diff(dir, h0);
    auto dh = curve_diff(dir, h0);
    auto dh2 = curve_diff(dir, h0 / 2);
    for (std::size_t q = 0; q < dh.size(); ++q) dh[q] = (4.0 * dh2[q] - dh[q]) / 3.0;
    return dh;
  };

  auto a = along(u);
  auto b = along(Complex(0, 1) * u);
  std::vector<Complex> out(a.size());
  for (std::size_t q = 0; q < out.size(); ++q)
    out[q] = 0.5 * (a[q] + sign * Complex(0, 1) * b[q]);
  return out;
}

}  // namespace detail

/// Holomorphic directional derivative u^l d/dv^l of a map along direction u.
template <class MapFn>
std::vector<Complex> fd_directional_hol(const MapFn& fn, const Eigen::VectorXcd& v,
                                        const Eigen::VectorXcd& u, int inner_order,
                                        const DiffConfig& cfg) {
  return detail::fd_directional(fn, v, u, -1.0, inner_order, cfg);
}

/// Antiholomorphic directional derivative c^t d/dv̄^t, the direction given by
/// its coefficient vector c (the underlying curves run along u = conj(c)).
template <class MapFn>
std::vector<Complex> fd_directional_antihol(const MapFn& fn, const Eigen::VectorXcd& v,
                                            const Eigen::VectorXcd& c, int inner_order,
                                            const DiffConfig& cfg) {
  return detail::fd_directional(fn, v, c.conjugate(), +1.0, inner_order, cfg);
}

}  // namespace finsler_lie
