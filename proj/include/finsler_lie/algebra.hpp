#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "finsler_lie/errors.hpp"
#include "finsler_lie/linalg.hpp"

namespace finsler_lie {

inline constexpr double kTolStructural = 1e-12;  // exact-input identities
inline constexpr double kTolClosure = 1e-10;     // computed-basis identities

/// Sparse entry of a real structure-constant tensor c^k_{ij}.
struct RealStructureEntry {
  int k, i, j;  // 1-based, as in the file format
  double value;
};

/// Sparse entry of a complex structure-constant block.
struct ComplexStructureEntry {
  int i, j, k;  // 1-based
  Complex value;
};

struct ValidationReport {
  double antisymmetry_residual = 0.0;
  double jacobi_residual = 0.0;
  bool pass = false;
};

/// Real Lie algebra of even dimension 2n given by structure constants
/// [f_i, f_j] = c^k_{ij} f_k. Immutable after construction.
class RealLieAlgebra {
public:
  /// Entries are taken literally; when only one orientation (k,i,j) of a pair
  /// is present, the antisymmetric partner (k,j,i) is filled in automatically.
  static RealLieAlgebra from_entries(int dim, const std::vector<RealStructureEntry>& entries);

  int dim() const { return dim_; }
  double c(int k, int i, int j) const {  // 0-based
    return c_[(static_cast<std::size_t>(k) * dim_ + i) * dim_ + j];
  }
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  const std::vector<RealStructureEntry>& entries() const { return entries_; }

private:
  int dim_ = 0;
  std::vector<double> c_;  // dense c^k_{ij}
  std::vector<RealStructureEntry> entries_;
};

ValidationReport validate_real(const RealLieAlgebra& alg);

/// Linear map I on the real algebra with I∘I = -Id (checked to 1e-12).
class AlmostComplexStructure {
public:
  explicit AlmostComplexStructure(Eigen::MatrixXd I);
  const Eigen::MatrixXd& matrix() const { return I_; }
  int dim() const { return static_cast<int>(I_.rows()); }

private:
  Eigen::MatrixXd I_;
};

struct NijenhuisResult {
  /// N(f_i, f_j) expanded in the real basis: component a is tensor(a, i, j).
  GT3<double> tensor;
  double max_abs = 0.0;
  bool integrable = false;
};

/// N_I(X,Y) = [X,Y] - [IX,IY] + I[IX,Y] + I[X,IY] over all basis pairs.
NijenhuisResult nijenhuis(const RealLieAlgebra& alg, const AlmostComplexStructure& I);

/// Complexified algebra: a basis E_i of g^{1,0} with structure-constant
/// blocks lambda^i_{jk} ([e_j,e_k] = lambda^i_{jk} e_i) and the mixed pair
/// lambda^i_{j kbar}, lambda^{ibar}_{j kbar}
/// ([e_j, ebar_k] = lambda^i_{j kbar} e_i + lambda^{ibar}_{j kbar} ebar_i).
/// Conjugate blocks such as lambda^{tbar}_{jbar k} are derived on access.
class ComplexifiedAlgebra {
public:
  static ComplexifiedAlgebra from_blocks(int n, const std::vector<ComplexStructureEntry>& hol,
                                         const std::vector<ComplexStructureEntry>& mixed_hol,
                                         const std::vector<ComplexStructureEntry>& mixed_anti);

  int n() const { return n_; }

  // 0-based dense accessors
  Complex lam_hol(int i, int j, int k) const { return hol_(i, j, k); }        // lambda^i_{jk}
  Complex lam_mixed_hol(int i, int j, int k) const { return mh_(i, j, k); }   // lambda^i_{j kbar}
  Complex lam_mixed_anti(int i, int j, int k) const { return ma_(i, j, k); }  // lambda^{ibar}_{j kbar}
  /// lambda^{tbar}_{jbar k}: the ebar_t coefficient of [ebar_j, e_k].
  Complex lam_anti_conj(int t, int j, int k) const { return std::conj(mh_(t, j, k)); }

  const Tensor3c& hol_block() const { return hol_; }
  const Tensor3c& mixed_hol_block() const { return mh_; }
  const Tensor3c& mixed_anti_block() const { return ma_; }

  double max_antisymmetry_residual() const;
  double max_conjugation_residual() const;
  double max_jacobi_residual() const;

private:
  int n_ = 0;
  Tensor3c hol_, mh_, ma_;
};

/// Element of the complexified algebra, a^i e_i + conj(b^i) ebar_i; the
/// second slot stores the conjugate coordinates of the (0,1)-part, so that
/// conjugation swaps the two slots.
struct AlgebraElement {
  Eigen::VectorXcd hol;        // a
  Eigen::VectorXcd anti_conj;  // b

  AlgebraElement conjugate() const { return {anti_conj, hol}; }
};

AlgebraElement hol_element(const Eigen::VectorXcd& v);
AlgebraElement antihol_element(const Eigen::VectorXcd& v);  // represents vbar

AlgebraElement bracket(const ComplexifiedAlgebra& alg, const AlgebraElement& x,
                       const AlgebraElement& y);

/// [v, wbar]^{1,0} for holomorphic coordinate vectors v, w.
Eigen::VectorXcd bracket_hol_antihol_10(const ComplexifiedAlgebra& alg, const Eigen::VectorXcd& v,
                                        const Eigen::VectorXcd& w);

struct ComplexGroupTypeResult {
  bool is_complex_group_type = false;
  double max_mixed = 0.0;
};

/// True iff both mixed blocks vanish ([g^{1,0}, g^{0,1}] = 0).
ComplexGroupTypeResult is_complex_group_type(const ComplexifiedAlgebra& alg);

bool is_abelian(const ComplexifiedAlgebra& alg);

/// Result of complexifying a real algebra: the complex algebra together with
/// the chosen real seed vectors f_i (E_i = w_i (f_i - i I f_i)).
struct ComplexifyResult {
  ComplexifiedAlgebra algebra;
  Eigen::MatrixXd seeds;         // columns f_1..f_n
  std::vector<double> weights;   // w_i
  double closure_residual = 0.0;
};

/// Splits g⊗C into eigenspaces of I and computes all structure-constant
/// blocks of the basis E_i = w_i (f_i - i I f_i). Requires an integrable I.
/// Empty weights selects the uniform default 1/sqrt(2).
ComplexifyResult complexify(const RealLieAlgebra& alg, const AlmostComplexStructure& I,
                            std::vector<double> weights = {});

/// Real form spanned by u_i = E_i + Ebar_i, w_i = i(E_i - Ebar_i), with the
/// complex structure u_i -> w_i -> -u_i. Complexifying it with weights 1/2
/// reproduces the original blocks.
struct RealFormResult {
  RealLieAlgebra algebra;
  Eigen::MatrixXd I;
  std::vector<double> roundtrip_weights;  // all 1/2
};
RealFormResult decomplexify(const ComplexifiedAlgebra& alg);

// builtins
ComplexifiedAlgebra builtin_abelian(int n);
ComplexifiedAlgebra builtin_complex_heisenberg();
ComplexifiedAlgebra builtin_ch2(double beta, double gamma);

/// The real solvable model of the complex hyperbolic plane: brackets
/// [X,Y] = Y/2, [X,Z] = Z/2, [X,W] = W, [Z,Y] = W with IX = sqrt(gamma/beta)W,
/// IY = -Z, IZ = Y, IW = -sqrt(beta/gamma)X and basis weights
/// (1/sqrt(2 gamma), 1/sqrt(2)).
struct Ch2RealData {
  RealLieAlgebra algebra;
  Eigen::MatrixXd I;
  std::vector<double> weights;
};
Ch2RealData builtin_ch2_real(double beta, double gamma);

}  // namespace finsler_lie
