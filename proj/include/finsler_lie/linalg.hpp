#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "finsler_lie/dual.hpp"
#include "finsler_lie/errors.hpp"

namespace finsler_lie {

using Complex = std::complex<double>;

inline double leaf_abs(const Complex& z) { return std::abs(z); }

/// Dense matrix over an arbitrary complex-like scalar.
template <class CT>
class GMat {
public:
  GMat() = default;
  GMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  CT& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const CT& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<CT> a_;
};

/// Dense rank-3 tensor, all extents equal to n.
template <class CT>
class GT3 {
public:
  GT3() = default;
  explicit GT3(int n) : n_(n), a_(static_cast<std::size_t>(n) * n * n) {}

  CT& operator()(int i, int j, int k) {
    return a_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
  }
  const CT& operator()(int i, int j, int k) const {
    return a_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
  }
  int dim() const { return n_; }
  const std::vector<CT>& data() const { return a_; }
  std::vector<CT>& data() { return a_; }

private:
  int n_ = 0;
  std::vector<CT> a_;
};

using Tensor3c = GT3<Complex>;

template <class CT>
double max_abs(const GT3<CT>& t) {
  double m = 0;
  for (const auto& x : t.data()) m = std::max(m, leaf_abs(x));
  return m;
}

inline double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// LU factorization with partial pivoting, generic over the scalar.
/// Pivoting compares leading (value-level) magnitudes so it also works for
/// dual-number scalars.
template <class CT>
class GLu {
public:
  explicit GLu(GMat<CT> a) : n_(a.rows()), lu_(std::move(a)), perm_(n_) {
    for (int i = 0; i < n_; ++i) perm_[i] = i;
    for (int col = 0; col < n_; ++col) {
      int piv = col;
      double best = leaf_abs(lu_(col, col));
      for (int r = col + 1; r < n_; ++r) {
        const double m = leaf_abs(lu_(r, col));
        if (m > best) { best = m; piv = r; }
      }
      if (best == 0.0) throw StronglyPseudoconvexViolation("singular matrix in LU factorization", 0.0);
      if (piv != col) {
        std::swap(perm_[piv], perm_[col]);
        for (int j = 0; j < n_; ++j) std::swap(lu_(piv, j), lu_(col, j));
      }
      for (int r = col + 1; r < n_; ++r) {
        CT f = lu_(r, col) / lu_(col, col);
        lu_(r, col) = f;
        for (int j = col + 1; j < n_; ++j) lu_(r, j) = lu_(r, j) - f * lu_(col, j);
      }
    }
  }

  std::vector<CT> solve(const std::vector<CT>& b) const {
    std::vector<CT> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = b[perm_[i]];
    for (int i = 1; i < n_; ++i)
      for (int j = 0; j < i; ++j) x[i] = x[i] - lu_(i, j) * x[j];
    for (int i = n_ - 1; i >= 0; --i) {
      for (int j = i + 1; j < n_; ++j) x[i] = x[i] - lu_(i, j) * x[j];
      x[i] = x[i] / lu_(i, i);
    }
    return x;
  }

  GMat<CT> inverse() const {
    GMat<CT> inv(n_, n_);
    std::vector<CT> e(n_);
    for (int c = 0; c < n_; ++c) {
      for (int i = 0; i < n_; ++i) e[i] = CT(i == c ? 1.0 : 0.0);
      auto x = solve(e);
      for (int i = 0; i < n_; ++i) inv(i, c) = x[i];
    }
    return inv;
  }

private:
  int n_;
  GMat<CT> lu_;
  std::vector<int> perm_;
};

inline GMat<Complex> from_eigen(const Eigen::MatrixXcd& m) {
  GMat<Complex> out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline Eigen::MatrixXcd to_eigen(const GMat<Complex>& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace finsler_lie
