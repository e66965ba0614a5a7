#include "finsler_lie/algebra.hpp"

#include <Eigen/QR>
#include <cmath>
#include <set>
#include <sstream>

namespace finsler_lie {

namespace {

void require_index(int v, int lo, int hi, const char* name) {
  if (v < lo || v > hi) {
    std::ostringstream os;
    os << "index " << name << "=" << v << " out of range [" << lo << ", " << hi << "]";
    throw InputError(os.str());
  }
}

}  // namespace

RealLieAlgebra RealLieAlgebra::from_entries(int dim, const std::vector<RealStructureEntry>& entries) {
  if (dim <= 0 || dim % 2 != 0) throw InputError("real algebra dimension must be a positive even integer");
  RealLieAlgebra alg;
  alg.dim_ = dim;
  alg.c_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  alg.entries_ = entries;
  std::set<std::tuple<int, int, int>> given;
  for (const auto& e : entries) {
    require_index(e.k, 1, dim, "k");
    require_index(e.i, 1, dim, "i");
    require_index(e.j, 1, dim, "j");
    if (!std::isfinite(e.value)) throw InputError("non-finite structure constant");
    alg.c_[(static_cast<std::size_t>(e.k - 1) * dim + (e.i - 1)) * dim + (e.j - 1)] = e.value;
    given.insert({e.k, e.i, e.j});
  }
  // fill antisymmetric partners unless explicitly provided
  for (const auto& e : entries) {
    if (!given.count({e.k, e.j, e.i}))
      alg.c_[(static_cast<std::size_t>(e.k - 1) * dim + (e.j - 1)) * dim + (e.i - 1)] = -e.value;
  }
  return alg;
}

Eigen::VectorXd RealLieAlgebra::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (int k = 0; k < dim_; ++k) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
      if (x[i] == 0.0) continue;
      for (int j = 0; j < dim_; ++j) s += c(k, i, j) * x[i] * y[j];
    }
    out[k] = s;
  }
  return out;
}

ValidationReport validate_real(const RealLieAlgebra& alg) {
  const int d = alg.dim();
  ValidationReport r;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        r.antisymmetry_residual =
            std::max(r.antisymmetry_residual, std::abs(alg.c(k, i, j) + alg.c(k, j, i)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int m = 0; m < d; ++m)
            s += alg.c(m, i, j) * alg.c(l, m, k) + alg.c(m, j, k) * alg.c(l, m, i) +
                 alg.c(m, k, i) * alg.c(l, m, j);
          r.jacobi_residual = std::max(r.jacobi_residual, std::abs(s));
        }
  r.pass = r.antisymmetry_residual < kTolStructural && r.jacobi_residual < kTolStructural;
  return r;
}

AlmostComplexStructure::AlmostComplexStructure(Eigen::MatrixXd I) : I_(std::move(I)) {
  if (I_.rows() != I_.cols()) throw InputError("almost complex structure matrix must be square");
  const Eigen::MatrixXd sq = I_ * I_ + Eigen::MatrixXd::Identity(I_.rows(), I_.cols());
  const double res = sq.cwiseAbs().maxCoeff();
  if (res > kTolStructural) {
    std::ostringstream os;
    os << "I*I + Id has max entry " << res << "; not an almost complex structure";
    throw InputError(os.str());
  }
}

NijenhuisResult nijenhuis(const RealLieAlgebra& alg, const AlmostComplexStructure& I) {
  const int d = alg.dim();
  if (I.dim() != d) throw InputError("almost complex structure dimension mismatch");
  NijenhuisResult out;
  out.tensor = GT3<double>(d);
  const Eigen::MatrixXd& M = I.matrix();
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd fi = Eigen::VectorXd::Unit(d, i);
    Eigen::VectorXd Ifi = M.col(i);
    for (int j = 0; j < d; ++j) {
      Eigen::VectorXd fj = Eigen::VectorXd::Unit(d, j);
      Eigen::VectorXd Ifj = M.col(j);
      Eigen::VectorXd nij = alg.bracket(fi, fj) - alg.bracket(Ifi, Ifj) +
                            M * alg.bracket(Ifi, fj) + M * alg.bracket(fi, Ifj);
      for (int a = 0; a < d; ++a) {
        out.tensor(a, i, j) = nij[a];
        out.max_abs = std::max(out.max_abs, std::abs(nij[a]));
      }
    }
  }
  out.integrable = out.max_abs < kTolClosure;
  return out;
}

ComplexifiedAlgebra ComplexifiedAlgebra::from_blocks(
    int n, const std::vector<ComplexStructureEntry>& hol,
    const std::vector<ComplexStructureEntry>& mixed_hol,
    const std::vector<ComplexStructureEntry>& mixed_anti) {
  if (n <= 0) throw InputError("complex dimension must be positive");
  ComplexifiedAlgebra alg;
  alg.n_ = n;
  alg.hol_ = Tensor3c(n);
  alg.mh_ = Tensor3c(n);
  alg.ma_ = Tensor3c(n);
  std::set<std::tuple<int, int, int>> given;
  for (const auto& e : hol) {
    require_index(e.i, 1, n, "i");
    require_index(e.j, 1, n, "j");
    require_index(e.k, 1, n, "k");
    alg.hol_(e.i - 1, e.j - 1, e.k - 1) = e.value;
    given.insert({e.i, e.j, e.k});
  }
  for (const auto& e : hol)
    if (!given.count({e.i, e.k, e.j})) alg.hol_(e.i - 1, e.k - 1, e.j - 1) = -e.value;
  for (const auto& e : mixed_hol) {
    require_index(e.i, 1, n, "i");
    require_index(e.j, 1, n, "j");
    require_index(e.k, 1, n, "k");
    alg.mh_(e.i - 1, e.j - 1, e.k - 1) = e.value;
  }
  for (const auto& e : mixed_anti) {
    require_index(e.i, 1, n, "i");
    require_index(e.j, 1, n, "j");
    require_index(e.k, 1, n, "k");
    alg.ma_(e.i - 1, e.j - 1, e.k - 1) = e.value;
  }
  return alg;
}

double ComplexifiedAlgebra::max_antisymmetry_residual() const {
  double r = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        r = std::max(r, std::abs(hol_(i, j, k) + hol_(i, k, j)));
  return r;
}

double ComplexifiedAlgebra::max_conjugation_residual() const {
  // conjugating [e_j, ebar_k] and using antisymmetry forces
  // lambda^{ibar}_{j kbar} = -conj(lambda^i_{k jbar})
  double r = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        r = std::max(r, std::abs(ma_(i, j, k) + std::conj(mh_(i, k, j))));
  return r;
}

AlgebraElement hol_element(const Eigen::VectorXcd& v) {
  return {v, Eigen::VectorXcd::Zero(v.size())};
}

AlgebraElement antihol_element(const Eigen::VectorXcd& v) {
  return {Eigen::VectorXcd::Zero(v.size()), v};
}

AlgebraElement bracket(const ComplexifiedAlgebra& alg, const AlgebraElement& x,
                       const AlgebraElement& y) {
  const int n = alg.n();
  AlgebraElement out{Eigen::VectorXcd::Zero(n), Eigen::VectorXcd::Zero(n)};
  // x = a^j e_j + conj(b^j) ebar_j, y = c^k e_k + conj(d^k) ebar_k
  for (int j = 0; j < n; ++j) {
    const Complex aj = x.hol[j];
    const Complex bj = std::conj(x.anti_conj[j]);
    for (int k = 0; k < n; ++k) {
      const Complex ck = y.hol[k];
      const Complex dk = std::conj(y.anti_conj[k]);
      for (int i = 0; i < n; ++i) {
        Complex hol_part = 0.0, anti_part = 0.0;  // anti_part: coefficient of ebar_i
        // [e_j, e_k] and its conjugate [ebar_j, ebar_k]
        if (aj != 0.0 && ck != 0.0) hol_part += aj * ck * alg.lam_hol(i, j, k);
        if (bj != 0.0 && dk != 0.0) anti_part += bj * dk * std::conj(alg.lam_hol(i, j, k));
        // [e_j, ebar_k]
        if (aj != 0.0 && dk != 0.0) {
          hol_part += aj * dk * alg.lam_mixed_hol(i, j, k);
          anti_part += aj * dk * alg.lam_mixed_anti(i, j, k);
        }
        // [ebar_j, e_k] = -[e_k, ebar_j]
        if (bj != 0.0 && ck != 0.0) {
          hol_part -= bj * ck * alg.lam_mixed_hol(i, k, j);
          anti_part -= bj * ck * alg.lam_mixed_anti(i, k, j);
        }
        out.hol[i] += hol_part;
        out.anti_conj[i] += std::conj(anti_part);
      }
    }
  }
  return out;
}

Eigen::VectorXcd bracket_hol_antihol_10(const ComplexifiedAlgebra& alg, const Eigen::VectorXcd& v,
                                        const Eigen::VectorXcd& w) {
  const int n = alg.n();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < n; ++i) {
    Complex s = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += alg.lam_mixed_hol(i, j, k) * v[j] * std::conj(w[k]);
    out[i] = s;
  }
  return out;
}

double ComplexifiedAlgebra::max_jacobi_residual() const {
  // all basis triples drawn from {e_i, ebar_i}
  const int n = n_;
  double r = 0.0;
  std::vector<AlgebraElement> basis;
  basis.reserve(2 * n);
  for (int i = 0; i < n; ++i) basis.push_back(hol_element(Eigen::VectorXcd::Unit(n, i)));
  for (int i = 0; i < n; ++i) basis.push_back(antihol_element(Eigen::VectorXcd::Unit(n, i)));
  for (const auto& x : basis)
    for (const auto& y : basis)
      for (const auto& z : basis) {
        AlgebraElement s = bracket(*this, bracket(*this, x, y), z);
        AlgebraElement t = bracket(*this, bracket(*this, y, z), x);
        AlgebraElement u = bracket(*this, bracket(*this, z, x), y);
        for (int i = 0; i < n; ++i) {
          r = std::max(r, std::abs(s.hol[i] + t.hol[i] + u.hol[i]));
          r = std::max(r, std::abs(s.anti_conj[i] + t.anti_conj[i] + u.anti_conj[i]));
        }
      }
  return r;
}

ComplexGroupTypeResult is_complex_group_type(const ComplexifiedAlgebra& alg) {
  ComplexGroupTypeResult out;
  out.max_mixed = std::max(max_abs(alg.mixed_hol_block()), max_abs(alg.mixed_anti_block()));
  out.is_complex_group_type = out.max_mixed < kTolStructural;
  return out;
}

bool is_abelian(const ComplexifiedAlgebra& alg) {
  return max_abs(alg.hol_block()) < kTolStructural &&
         is_complex_group_type(alg).is_complex_group_type;
}

ComplexifyResult complexify(const RealLieAlgebra& alg, const AlmostComplexStructure& I,
                            std::vector<double> weights) {
  const int d = alg.dim();
  const int n = d / 2;
  if (I.dim() != d) throw InputError("almost complex structure dimension mismatch");

  const NijenhuisResult nij = nijenhuis(alg, I);
  if (!nij.integrable) {
    int bi = 1, bj = 1;
    double best = -1.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int a = 0; a < d; ++a)
          if (std::abs(nij.tensor(a, i, j)) > best) {
            best = std::abs(nij.tensor(a, i, j));
            bi = i + 1;
            bj = j + 1;
          }
    std::ostringstream os;
    os << "almost complex structure is not integrable: max |N_I| = " << nij.max_abs
       << " at basis pair (" << bi << ", " << bj << ")";
    throw IntegrabilityError(os.str(), bi, bj, nij.max_abs);
  }

  if (weights.empty()) weights.assign(n, 1.0 / std::sqrt(2.0));
  if (static_cast<int>(weights.size()) != n) throw InputError("expected one weight per complex basis vector");
  for (double w : weights)
    if (!(w > 0.0)) throw ParameterError("basis weights must be positive");

  // greedy seed selection: f_a enters if it enlarges span{f, If}
  const Eigen::MatrixXd& M = I.matrix();
  Eigen::MatrixXd span(d, 0);
  Eigen::MatrixXd seeds(d, 0);
  for (int a = 0; a < d && span.cols() < d; ++a) {
    Eigen::VectorXd f = Eigen::VectorXd::Unit(d, a);
    Eigen::MatrixXd trial(d, span.cols() + 2);
    if (span.cols() > 0) trial.leftCols(span.cols()) = span;
    trial.col(span.cols()) = f;
    trial.col(span.cols() + 1) = M * f;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(trial);
    qr.setThreshold(1e-9);
    if (qr.rank() == trial.cols()) {
      span = trial;
      seeds.conservativeResize(d, seeds.cols() + 1);
      seeds.col(seeds.cols() - 1) = f;
    }
  }
  if (seeds.cols() != n)
    throw ClosureError("failed to select a complex basis from the standard real basis");

  // E_i = w_i (f_i - i I f_i); change of basis from real coordinates to {E, Ebar}
  Eigen::MatrixXcd basis(d, d);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXcd Ei =
        weights[i] * (seeds.col(i).cast<Complex>() - Complex(0, 1) * (M * seeds.col(i)).cast<Complex>());
    basis.col(i) = Ei;
    basis.col(n + i) = Ei.conjugate();
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(basis);

  auto cbracket = [&](const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d);
    for (int k = 0; k < d; ++k) {
      Complex s = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (alg.c(k, i, j) != 0.0) s += alg.c(k, i, j) * x[i] * y[j];
      out[k] = s;
    }
    return out;
  };

  std::vector<ComplexStructureEntry> hol, mixed_hol, mixed_anti;
  double closure = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j < k) {
        Eigen::VectorXcd coef = lu.solve(cbracket(basis.col(j), basis.col(k)));
        for (int i = 0; i < n; ++i) {
          if (std::abs(coef[i]) > 0)
            hol.push_back({i + 1, j + 1, k + 1, coef[i]});
          closure = std::max(closure, std::abs(coef[n + i]));
        }
      }
      Eigen::VectorXcd coef = lu.solve(cbracket(basis.col(j), basis.col(n + k)));
      for (int i = 0; i < n; ++i) {
        if (std::abs(coef[i]) > 0) mixed_hol.push_back({i + 1, j + 1, k + 1, coef[i]});
        if (std::abs(coef[n + i]) > 0) mixed_anti.push_back({i + 1, j + 1, k + 1, coef[n + i]});
      }
    }
  if (closure > kTolClosure) {
    std::ostringstream os;
    os << "holomorphic brackets leak into g^{0,1} (residual " << closure << ")";
    throw ClosureError(os.str());
  }

  ComplexifyResult out{ComplexifiedAlgebra::from_blocks(n, hol, mixed_hol, mixed_anti), seeds,
                       std::move(weights), closure};
  return out;
}

RealFormResult decomplexify(const ComplexifiedAlgebra& alg) {
  const int n = alg.n();
  const int d = 2 * n;
  // real basis u_i = E_i + Ebar_i (index i), w_i = i(E_i - Ebar_i) (index n+i)
  auto to_element = [&](int a) {
    Eigen::VectorXcd hol = Eigen::VectorXcd::Zero(n), anti = Eigen::VectorXcd::Zero(n);
    if (a < n) {
      hol[a] = 1.0;
      anti[a] = 1.0;  // conj coords of Ebar_a; conj(1) ebar
    } else {
      hol[a - n] = Complex(0, 1);
      anti[a - n] = std::conj(Complex(0, -1));
    }
    return AlgebraElement{hol, anti};
  };
  // expand an element back over {u, w}: E_i = (u_i - i w_i)/2, Ebar_i = (u_i + i w_i)/2
  auto to_real_coords = [&](const AlgebraElement& e) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < n; ++i) {
      const Complex a = e.hol[i];
      const Complex b = std::conj(e.anti_conj[i]);  // coefficient of ebar_i
      // a E + b Ebar = u*(E+Ebar) + w*i(E-Ebar) gives u = (a+b)/2, w = i(b-a)/2
      const Complex u = (a + b) * 0.5;
      const Complex w = (b - a) * Complex(0, 0.5);
      out[i] = u.real();
      out[n + i] = w.real();
      if (std::abs(u.imag()) > 1e-9 || std::abs(w.imag()) > 1e-9)
        throw ClosureError("bracket of real-form elements is not real");
    }
    return out;
  };

  std::vector<RealStructureEntry> entries;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      AlgebraElement br = bracket(alg, to_element(a), to_element(b));
      Eigen::VectorXd coords = to_real_coords(br);
      for (int k = 0; k < d; ++k)
        if (std::abs(coords[k]) > 1e-15) entries.push_back({k + 1, a + 1, b + 1, coords[k]});
    }

  Eigen::MatrixXd I = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    I(n + i, i) = 1.0;   // I u_i = w_i
    I(i, n + i) = -1.0;  // I w_i = -u_i
  }
  return {RealLieAlgebra::from_entries(d, entries), I, std::vector<double>(n, 0.5)};
}

ComplexifiedAlgebra builtin_abelian(int n) {
  if (n <= 0) throw ParameterError("abelian builtin requires n >= 1");
  return ComplexifiedAlgebra::from_blocks(n, {}, {}, {});
}

ComplexifiedAlgebra builtin_complex_heisenberg() {
  std::vector<ComplexStructureEntry> hol = {{3, 1, 2, 1.0}};
  return ComplexifiedAlgebra::from_blocks(3, hol, {}, {});
}

ComplexifiedAlgebra builtin_ch2(double beta, double gamma) {
  if (!(beta > 0.0) || !(gamma > 0.0)) throw ParameterError("ch2 requires beta > 0 and gamma > 0");
  const double r = 1.0 / std::sqrt(2.0 * gamma);
  const double m = std::sqrt(beta / 2.0);
  std::vector<ComplexStructureEntry> hol = {{2, 1, 2, r / 2}};
  std::vector<ComplexStructureEntry> mixed_hol = {
      {1, 1, 1, -r},      // [e_1, ebar_1] e_1-part
      {2, 2, 1, -r / 2},  // [e_2, ebar_1] e_2-part, forced by conjugation consistency
      {1, 2, 2, -m},      // [e_2, ebar_2] e_1-part
  };
  std::vector<ComplexStructureEntry> mixed_anti = {
      {1, 1, 1, r},      // [e_1, ebar_1] ebar_1-part
      {2, 1, 2, r / 2},  // [e_1, ebar_2] ebar_2-part
      {1, 2, 2, m},      // [e_2, ebar_2] ebar_1-part
  };
  return ComplexifiedAlgebra::from_blocks(2, hol, mixed_hol, mixed_anti);
}

Ch2RealData builtin_ch2_real(double beta, double gamma) {
  if (!(beta > 0.0) || !(gamma > 0.0)) throw ParameterError("ch2 requires beta > 0 and gamma > 0");
  // basis order X, Y, Z, W
  std::vector<RealStructureEntry> entries = {
      {2, 1, 2, 0.5},  // [X,Y] = Y/2
      {3, 1, 3, 0.5},  // [X,Z] = Z/2
      {4, 1, 4, 1.0},  // [X,W] = W
      {4, 3, 2, 1.0},  // [Z,Y] = W
  };
  Eigen::MatrixXd I = Eigen::MatrixXd::Zero(4, 4);
  I(3, 0) = std::sqrt(gamma / beta);   // IX = sqrt(gamma/beta) W
  I(2, 1) = -1.0;                      // IY = -Z
  I(1, 2) = 1.0;                       // IZ = Y
  I(0, 3) = -std::sqrt(beta / gamma);  // IW = -sqrt(beta/gamma) X
  return {RealLieAlgebra::from_entries(4, entries),
          I,
          {1.0 / std::sqrt(2.0 * gamma), 1.0 / std::sqrt(2.0)}};
}

}  // namespace finsler_lie
