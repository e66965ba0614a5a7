#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finsler_lie/algebra.hpp"
#include "finsler_lie/io.hpp"
#include "finsler_lie/sampling.hpp"
#include "oracles.hpp"

using namespace finsler_lie;

namespace {
const double kSqrt2Inv = 1.0 / std::sqrt(2.0);
}

TEST_CASE("validate_real accepts the ch2 constants and the abelian algebra") {
  const auto ch2 = builtin_ch2_real(1.0, 1.0);
  const auto rep = validate_real(ch2.algebra);
  CHECK(rep.pass);
  CHECK(rep.antisymmetry_residual == 0.0);
  CHECK(rep.jacobi_residual <= 1e-12);

  const auto abelian = RealLieAlgebra::from_entries(4, {});
  CHECK(validate_real(abelian).pass);
}

TEST_CASE("validate_real flags broken antisymmetry with residual 2") {
  const auto bad = RealLieAlgebra::from_entries(4, {{1, 1, 2, 1.0}, {1, 2, 1, 1.0}});
  const auto rep = validate_real(bad);
  CHECK_FALSE(rep.pass);
  CHECK(rep.antisymmetry_residual == doctest::Approx(2.0));
}

TEST_CASE("validate_real rejects odd dimensions and bad indices") {
  CHECK_THROWS_AS(RealLieAlgebra::from_entries(3, {}), InputError);
  CHECK_THROWS_AS(RealLieAlgebra::from_entries(4, {{5, 1, 2, 1.0}}), InputError);
}

TEST_CASE("nijenhuis vanishes for the ch2 structure and any abelian algebra") {
  for (double beta : {1.0, 2.0})
    for (double gamma : {1.0, 0.5}) {
      const auto data = builtin_ch2_real(beta, gamma);
      const auto r = nijenhuis(data.algebra, AlmostComplexStructure(data.I));
      CHECK(r.max_abs <= 1e-12);
      CHECK(r.integrable);
    }

  const auto abelian = RealLieAlgebra::from_entries(6, {});
  Eigen::MatrixXd I = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 0; i < 3; ++i) {
    I(3 + i, i) = 1;
    I(i, 3 + i) = -1;
  }
  CHECK(nijenhuis(abelian, AlmostComplexStructure(I)).max_abs == 0.0);
}

TEST_CASE("nijenhuis detects a non-integrable structure on su(2)+R") {
  const auto [alg, I] = oracles::su2_plus_r_sheared();
  const AlmostComplexStructure acs(I);  // still a valid square root of -Id
  const auto r = nijenhuis(alg, acs);
  CHECK_FALSE(r.integrable);
  CHECK(r.max_abs > 0.5);
  // entrywise against the defining formula
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Eigen::VectorXd expected = oracles::nijenhuis_pair(alg, I, i, j);
      for (int a = 0; a < 4; ++a)
        CHECK(r.tensor(a, i, j) == doctest::Approx(expected[a]).epsilon(1e-14));
    }
}

TEST_CASE("nijenhuis output is antisymmetric in its two slots") {
  const auto [alg, I] = oracles::su2_plus_r_sheared();
  const auto r = nijenhuis(alg, AlmostComplexStructure(I));
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(r.tensor(a, i, j) == doctest::Approx(-r.tensor(a, j, i)).epsilon(1e-14));
}

TEST_CASE("complexify reproduces the ch2 structure constants") {
  const auto data = builtin_ch2_real(1.0, 1.0);
  const auto cx = complexify(data.algebra, AlmostComplexStructure(data.I), data.weights);
  const auto& a = cx.algebra;
  REQUIRE(a.n() == 2);
  CHECK(a.lam_hol(1, 0, 1).real() == doctest::Approx(0.3535533905932738).epsilon(1e-13));
  CHECK(a.lam_mixed_hol(0, 0, 0).real() == doctest::Approx(-kSqrt2Inv).epsilon(1e-13));
  CHECK(a.lam_mixed_anti(0, 0, 0).real() == doctest::Approx(kSqrt2Inv).epsilon(1e-13));
  CHECK(a.lam_mixed_anti(1, 0, 1).real() == doctest::Approx(0.3535533905932738).epsilon(1e-13));
  CHECK(a.lam_mixed_hol(0, 1, 1).real() == doctest::Approx(-kSqrt2Inv).epsilon(1e-13));
  CHECK(a.lam_mixed_anti(0, 1, 1).real() == doctest::Approx(kSqrt2Inv).epsilon(1e-13));
  // forced by conjugation consistency from the listed entries
  CHECK(a.lam_mixed_hol(1, 1, 0).real() == doctest::Approx(-0.3535533905932738).epsilon(1e-13));
  CHECK(cx.closure_residual <= 1e-10);
  CHECK(a.max_jacobi_residual() <= 1e-12);
}

TEST_CASE("complexify of an abelian algebra gives zero blocks") {
  const auto abelian = RealLieAlgebra::from_entries(6, {});
  Eigen::MatrixXd I = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 0; i < 3; ++i) {
    I(3 + i, i) = 1;
    I(i, 3 + i) = -1;
  }
  const auto cx = complexify(abelian, AlmostComplexStructure(I));
  CHECK(max_abs(cx.algebra.hol_block()) == 0.0);
  CHECK(max_abs(cx.algebra.mixed_hol_block()) == 0.0);
  CHECK(max_abs(cx.algebra.mixed_anti_block()) == 0.0);
}

TEST_CASE("complexify of the real complex-Heisenberg algebra") {
  // complex Heisenberg as a real 6-dimensional algebra: E_k = f_{2k-1},
  // i E_k = f_{2k}, [E1, E2] = E3
  std::vector<RealStructureEntry> entries = {
      {5, 1, 3, 1.0},   // [f1,f3] = f5
      {6, 1, 4, 1.0},   // [f1,f4] = f6
      {6, 2, 3, 1.0},   // [f2,f3] = f6
      {5, 2, 4, -1.0},  // [f2,f4] = -f5
  };
  const auto alg = RealLieAlgebra::from_entries(6, entries);
  REQUIRE(validate_real(alg).pass);
  Eigen::MatrixXd I = Eigen::MatrixXd::Zero(6, 6);
  for (int k = 0; k < 3; ++k) {
    I(2 * k + 1, 2 * k) = 1;  // I f_{2k-1} = f_{2k}
    I(2 * k, 2 * k + 1) = -1;
  }
  const auto cx = complexify(alg, AlmostComplexStructure(I), std::vector<double>(3, 0.5));
  CHECK(cx.algebra.lam_hol(2, 0, 1).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cx.algebra.lam_hol(2, 0, 1).imag() == doctest::Approx(0.0));
  CHECK(max_abs(cx.algebra.mixed_hol_block()) <= 1e-14);
  CHECK(max_abs(cx.algebra.mixed_anti_block()) <= 1e-14);
}

TEST_CASE("complexify rejects a non-integrable structure") {
  const auto [alg, I] = oracles::su2_plus_r_sheared();
  CHECK_THROWS_AS(complexify(alg, AlmostComplexStructure(I)), IntegrabilityError);
}

TEST_CASE("AlmostComplexStructure rejects matrices with I*I != -Id") {
  const Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(4, 4);
  auto make = [&] { return AlmostComplexStructure(bad); };
  CHECK_THROWS_AS(make(), InputError);
}

TEST_CASE("bracket on ch2 matches the listed mixed bracket") {
  const auto alg = builtin_ch2(1.0, 1.0);
  const Eigen::VectorXcd e2 = Eigen::VectorXcd::Unit(2, 1);
  const auto r = bracket(alg, hol_element(e2), antihol_element(e2));
  // [e_2, ebar_2] = -(1/sqrt2) e_1 + (1/sqrt2) ebar_1
  CHECK(r.hol[0].real() == doctest::Approx(-kSqrt2Inv));
  CHECK(std::abs(r.hol[1]) <= 1e-15);
  CHECK(r.anti_conj[0].real() == doctest::Approx(kSqrt2Inv));
}

TEST_CASE("bracket of a vector with itself vanishes") {
  Sampler s(3);
  const auto ch2 = builtin_ch2(1.0, 1.0);
  const auto heis = builtin_complex_heisenberg();
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXcd v2 = s.gaussian_vector(2);
    const auto r = bracket(ch2, hol_element(v2), hol_element(v2));
    CHECK(r.hol.cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(r.anti_conj.cwiseAbs().maxCoeff() <= 1e-14);
    const Eigen::VectorXcd v3 = s.gaussian_vector(3);
    const auto q = bracket(heis, hol_element(v3), hol_element(v3));
    CHECK(q.hol.cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("complex Heisenberg has vanishing mixed brackets") {
  const auto heis = builtin_complex_heisenberg();
  const auto r = bracket(heis, hol_element(Eigen::VectorXcd::Unit(3, 0)),
                         antihol_element(Eigen::VectorXcd::Unit(3, 1)));
  CHECK(r.hol.cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.anti_conj.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("conjugating both bracket arguments conjugates and swaps the parts") {
  const auto ch2 = builtin_ch2(1.3, 0.8);
  Sampler s(5);
  for (int t = 0; t < 5; ++t) {
    AlgebraElement x{s.gaussian_vector(2), s.gaussian_vector(2)};
    AlgebraElement y{s.gaussian_vector(2), s.gaussian_vector(2)};
    const auto lhs = bracket(ch2, x.conjugate(), y.conjugate());
    const auto rhs = bracket(ch2, x, y).conjugate();
    CHECK((lhs.hol - rhs.hol).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((lhs.anti_conj - rhs.anti_conj).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("is_complex_group_type") {
  CHECK(is_complex_group_type(builtin_complex_heisenberg()).is_complex_group_type);
  CHECK(is_complex_group_type(builtin_abelian(3)).is_complex_group_type);
  const auto r = is_complex_group_type(builtin_ch2(1.0, 1.0));
  CHECK_FALSE(r.is_complex_group_type);
  CHECK(r.max_mixed == doctest::Approx(kSqrt2Inv));
}

TEST_CASE("complex-group type implies vanishing hol/antihol brackets on random pairs") {
  const auto heis = builtin_complex_heisenberg();
  Sampler s(17);
  for (int t = 0; t < 100; ++t) {
    const auto r =
        bracket(heis, hol_element(s.gaussian_vector(3)), antihol_element(s.gaussian_vector(3)));
    CHECK(r.hol.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(r.anti_conj.cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("builtin algebras satisfy the complex Jacobi identity and conjugation consistency") {
  Sampler s(23);
  for (int t = 0; t < 4; ++t) {
    const double beta = 0.25 + 2.0 * s.uniform01();
    const double gamma = 0.25 + 2.0 * s.uniform01();
    const auto alg = builtin_ch2(beta, gamma);
    CHECK(alg.max_jacobi_residual() <= 1e-12);
    CHECK(alg.max_conjugation_residual() <= 1e-12);
    CHECK(alg.max_antisymmetry_residual() <= 1e-12);
  }
  CHECK(builtin_complex_heisenberg().max_jacobi_residual() <= 1e-12);
  CHECK(builtin_abelian(4).max_jacobi_residual() == 0.0);
}

TEST_CASE("builtin parameter validation") {
  CHECK_THROWS_AS(builtin_ch2(-1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(builtin_ch2(1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(builtin_abelian(0), ParameterError);
}

TEST_CASE("general-parameter ch2 builtin values") {
  const double beta = 2.0, gamma = 0.5;
  const auto a = builtin_ch2(beta, gamma);
  const double r = 1.0 / std::sqrt(2.0 * gamma);
  const double m = std::sqrt(beta / 2.0);
  CHECK(a.lam_hol(1, 0, 1).real() == doctest::Approx(r / 2));
  CHECK(a.lam_mixed_hol(0, 0, 0).real() == doctest::Approx(-r));
  CHECK(a.lam_mixed_anti(0, 0, 0).real() == doctest::Approx(r));
  CHECK(a.lam_mixed_anti(1, 0, 1).real() == doctest::Approx(r / 2));
  CHECK(a.lam_mixed_hol(0, 1, 1).real() == doctest::Approx(-m));
  CHECK(a.lam_mixed_anti(0, 1, 1).real() == doctest::Approx(m));
}

TEST_CASE("decomplexify / complexify round-trips the builtin bracket tables") {
  for (const ComplexifiedAlgebra& alg :
       {builtin_ch2(1.0, 1.0), builtin_ch2(2.0, 0.7), builtin_complex_heisenberg(),
        builtin_abelian(2)}) {
    const auto rf = decomplexify(alg);
    CHECK(validate_real(rf.algebra).pass);
    const auto back = complexify(rf.algebra, AlmostComplexStructure(rf.I), rf.roundtrip_weights);
    const int n = alg.n();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          CHECK(std::abs(back.algebra.lam_hol(i, j, k) - alg.lam_hol(i, j, k)) <= 1e-12);
          CHECK(std::abs(back.algebra.lam_mixed_hol(i, j, k) - alg.lam_mixed_hol(i, j, k)) <=
                1e-12);
          CHECK(std::abs(back.algebra.lam_mixed_anti(i, j, k) - alg.lam_mixed_anti(i, j, k)) <=
                1e-12);
        }
  }
}

TEST_CASE("complexified algebra JSON round-trip") {
  const auto alg = builtin_ch2(1.7, 0.4);
  const std::string js = complexified_to_json(alg);
  const auto parsed = parse_complexified_json(js);
  REQUIRE(parsed.n() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        CHECK(std::abs(parsed.lam_hol(i, j, k) - alg.lam_hol(i, j, k)) == 0.0);
        CHECK(std::abs(parsed.lam_mixed_hol(i, j, k) - alg.lam_mixed_hol(i, j, k)) == 0.0);
        CHECK(std::abs(parsed.lam_mixed_anti(i, j, k) - alg.lam_mixed_anti(i, j, k)) == 0.0);
      }
  CHECK(parsed.max_jacobi_residual() <= 1e-12);
}

TEST_CASE("hol entries with j >= k are rejected by the parser") {
  CHECK_THROWS_AS(
      parse_complexified_json(R"({"n":2,"lambda_hol":[{"i":1,"j":2,"k":1,"re":1,"im":0}]})"),
      InputError);
}

TEST_CASE("real algebra entries auto-antisymmetrize unless both orientations given") {
  const auto alg = RealLieAlgebra::from_entries(4, {{2, 1, 2, 0.5}});
  CHECK(alg.c(1, 0, 1) == 0.5);
  CHECK(alg.c(1, 1, 0) == -0.5);
  CHECK(validate_real(alg).pass);
}
