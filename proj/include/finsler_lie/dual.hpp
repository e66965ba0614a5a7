#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

namespace finsler_lie {

/// Forward-mode dual number carrying first partials with respect to `m` real
/// variables. Nesting (`Dual<Dual<double>>`, ...) yields higher-order mixed
/// partials; an empty partial vector denotes a constant, which keeps literals
/// cheap at any nesting depth.
template <class T>
struct Dual {
  T v{};
  std::vector<T> d;

  Dual() = default;
  Dual(double c) : v(c) {}  // NOLINT: implicit by design, constants promote silently
  Dual(T value, std::size_t m) : v(std::move(value)), d(m) {}

  static Dual seeded(double x, std::size_t var, std::size_t m) {
    Dual out;
    out.v = make_seeded_inner(x, var, m);
    out.d.assign(m, T{});
    out.d[var] = T(1.0);
    return out;
  }

private:
  static T make_seeded_inner(double x, std::size_t var, std::size_t m) {
    if constexpr (std::is_same_v<T, double>) {
      (void)var;
      (void)m;
      return x;
    } else {
      return T::seeded(x, var, m);
    }
  }
};

namespace dual_detail {
template <class T>
const T& at_or_zero(const std::vector<T>& d, std::size_t i) {
  static const T zero{};
  return d.empty() ? zero : d[i];
}
}  // namespace dual_detail

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
  Dual<T> r;
  r.v = a.v + b.v;
  const std::size_t m = std::max(a.d.size(), b.d.size());
  r.d.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    r.d[i] = dual_detail::at_or_zero(a.d, i) + dual_detail::at_or_zero(b.d, i);
  return r;
}

template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  Dual<T> r;
  r.v = a.v - b.v;
  const std::size_t m = std::max(a.d.size(), b.d.size());
  r.d.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    r.d[i] = dual_detail::at_or_zero(a.d, i) - dual_detail::at_or_zero(b.d, i);
  return r;
}

template <class T>
Dual<T> operator-(const Dual<T>& a) {
  Dual<T> r;
  r.v = -a.v;
  r.d.resize(a.d.size());
  for (std::size_t i = 0; i < a.d.size(); ++i) r.d[i] = -a.d[i];
  return r;
}

template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  Dual<T> r;
  r.v = a.v * b.v;
  const std::size_t m = std::max(a.d.size(), b.d.size());
  r.d.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    r.d[i] = dual_detail::at_or_zero(a.d, i) * b.v + a.v * dual_detail::at_or_zero(b.d, i);
  return r;
}

template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  Dual<T> r;
  r.v = a.v / b.v;
  const std::size_t m = std::max(a.d.size(), b.d.size());
  r.d.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    r.d[i] = (dual_detail::at_or_zero(a.d, i) - r.v * dual_detail::at_or_zero(b.d, i)) / b.v;
  return r;
}

template <class T> Dual<T> operator+(const Dual<T>& a, double b) { return a + Dual<T>(b); }
template <class T> Dual<T> operator+(double a, const Dual<T>& b) { return Dual<T>(a) + b; }
template <class T> Dual<T> operator-(const Dual<T>& a, double b) { return a - Dual<T>(b); }
template <class T> Dual<T> operator-(double a, const Dual<T>& b) { return Dual<T>(a) - b; }
template <class T> Dual<T> operator*(const Dual<T>& a, double b) { return a * Dual<T>(b); }
template <class T> Dual<T> operator*(double a, const Dual<T>& b) { return Dual<T>(a) * b; }
template <class T> Dual<T> operator/(const Dual<T>& a, double b) { return a / Dual<T>(b); }
template <class T> Dual<T> operator/(double a, const Dual<T>& b) { return Dual<T>(a) / b; }

// chain rule helper: g(x) with value gv and derivative factor gp
template <class T>
Dual<T> dual_chain(const Dual<T>& x, T gv, T gp) {
  Dual<T> r;
  r.v = std::move(gv);
  r.d.resize(x.d.size());
  for (std::size_t i = 0; i < x.d.size(); ++i) r.d[i] = gp * x.d[i];
  return r;
}

using std::exp;
using std::log;
using std::pow;
using std::sqrt;

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T s = sqrt(x.v);
  return dual_chain(x, s, T(0.5) / s);
}

template <class T>
Dual<T> log(const Dual<T>& x) {
  return dual_chain(x, log(x.v), T(1.0) / x.v);
}

template <class T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.v);
  return dual_chain(x, e, e);
}

template <class T>
Dual<T> pow(const Dual<T>& x, double a) {
  return dual_chain(x, pow(x.v, a), T(a) * pow(x.v, a - 1.0));
}

/// Innermost double of a (possibly nested) dual; used for pivot comparisons.
inline double leaf_value(double x) { return x; }
template <class T>
double leaf_value(const Dual<T>& x) { return leaf_value(x.v); }

/// Complex numbers over an arbitrary real scalar ring (double, Dual, ...).
template <class T>
struct Cx {
  T re{}, im{};

  Cx() = default;
  Cx(T re) : re(std::move(re)) {}  // NOLINT
  Cx(T re, T im) : re(std::move(re)), im(std::move(im)) {}
  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  Cx(double re) : re(re), im(0.0) {}  // NOLINT
};

template <class T> Cx<T> operator+(const Cx<T>& a, const Cx<T>& b) { return {a.re + b.re, a.im + b.im}; }
template <class T> Cx<T> operator-(const Cx<T>& a, const Cx<T>& b) { return {a.re - b.re, a.im - b.im}; }
template <class T> Cx<T> operator-(const Cx<T>& a) { return {-a.re, -a.im}; }

template <class T>
Cx<T> operator*(const Cx<T>& a, const Cx<T>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class T>
Cx<T> conj(const Cx<T>& a) { return {a.re, -a.im}; }

template <class T>
T norm_sq(const Cx<T>& a) { return a.re * a.re + a.im * a.im; }

template <class T>
Cx<T> operator/(const Cx<T>& a, const Cx<T>& b) {
  T n = norm_sq(b);
  Cx<T> p = a * conj(b);
  return {p.re / n, p.im / n};
}

template <class T> Cx<T> operator*(const Cx<T>& a, double s) { return {a.re * T(s), a.im * T(s)}; }
template <class T> Cx<T> operator*(double s, const Cx<T>& a) { return a * s; }

template <class T>
double leaf_abs(const Cx<T>& a) {
  return std::hypot(leaf_value(a.re), leaf_value(a.im));
}

}  // namespace finsler_lie
