#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finsler_lie/connection.hpp"
#include "finsler_lie/sampling.hpp"
#include "oracles.hpp"

using namespace finsler_lie;

namespace {

Eigen::MatrixXcd random_hermitian_pd(int n, std::uint64_t seed) {
  Sampler s(seed);
  Eigen::MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = s.complex_scalar();
  return A * A.adjoint() + 0.5 * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace

TEST_CASE("nonlinear connection vanishes for complex-group-type algebras") {
  const auto heis = builtin_complex_heisenberg();
  const std::vector<NormSpec> norms = {
      NormSpec::hermitian(Eigen::MatrixXcd::Identity(3, 3)),
      NormSpec::perturbed_hermitian(Eigen::MatrixXcd::Identity(3, 3), 0.1, 2),
  };
  Sampler s(1);
  for (const auto& norm : norms)
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXcd v = s.unit_vector(3);
      const MetricJet jet = metric_jet(norm, v);
      const auto conn = nonlinear_connection(heis, jet, v);
      CHECK(conn.N.cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(conn.N_bar_arg.cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(conn.solve_residual <= 1e-10);
    }
  const auto abelian = builtin_abelian(2);
  const auto norm2 = NormSpec::hermitian(Eigen::MatrixXcd::Identity(2, 2));
  const Eigen::VectorXcd v = Eigen::VectorXcd::Unit(2, 0);
  CHECK(nonlinear_connection(abelian, metric_jet(norm2, v), v).N.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ch2 nonlinear connection matches the independent linear-solve oracle") {
  const auto ch2 = builtin_ch2(1.0, 1.0);
  const auto norm = NormSpec::hermitian(Eigen::MatrixXcd::Identity(2, 2));
  const Eigen::VectorXcd e1 = Eigen::VectorXcd::Unit(2, 0);
  const MetricJet jet = metric_jet(norm, e1);
  const auto conn = nonlinear_connection(ch2, jet, e1);
  const Eigen::MatrixXcd expected =
      oracles::solve_nonlinear_connection(ch2, jet.g, jet.g_antihol, e1);
  CHECK((conn.N - expected).cwiseAbs().maxCoeff() <= 1e-13);
  // with the identity metric the solution is -Id/sqrt(2)
  CHECK(std::abs(conn.N(0, 0) - Complex(-1.0 / std::sqrt(2.0))) <= 1e-14);
  CHECK(std::abs(conn.N(1, 1) - Complex(-1.0 / std::sqrt(2.0))) <= 1e-14);
  CHECK(std::abs(conn.N(0, 1)) <= 1e-14);
  CHECK(std::abs(conn.N(1, 0)) <= 1e-14);

  // same oracle at random v with a perturbed norm
  const auto pert = NormSpec::perturbed_hermitian(Eigen::MatrixXcd::Identity(2, 2), 0.1, 2);
  Sampler s(2);
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXcd v = s.unit_vector(2);
    const MetricJet pjet = metric_jet(pert, v);
    const auto pc = nonlinear_connection(ch2, pjet, v);
    const Eigen::MatrixXcd pe = oracles::solve_nonlinear_connection(ch2, pjet.g, pjet.g_antihol, v);
    CHECK((pc.N - pe).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("N_bar_arg is the contraction -lambda^i_{k jbar} v^k") {
  const auto ch2 = builtin_ch2(1.4, 0.6);
  const auto norm = NormSpec::hermitian(Eigen::MatrixXcd::Identity(2, 2));
  Sampler s(3);
  const Eigen::VectorXcd v = s.unit_vector(2);
  const auto conn = nonlinear_connection(ch2, metric_jet(norm, v), v);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Complex expect = 0.0;
      for (int k = 0; k < 2; ++k) expect -= ch2.lam_mixed_hol(i, k, j) * v[k];
      CHECK(std::abs(conn.N_bar_arg(i, j) - expect) <= 1e-15);
    }
}

TEST_CASE("contraction identity v^i Gamma^j_ik = N^j_k") {
  const auto ch2 = builtin_ch2(1.0, 1.0);
  const auto pert = NormSpec::perturbed_hermitian(Eigen::MatrixXcd::Identity(2, 2), 0.1, 2);
  Sampler s(4);
  for (int t = 0; t < 50; ++t) {
    const Eigen::VectorXcd v = s.unit_vector(2);
    const MetricJet jet = metric_jet(pert, v);
    const auto conn = nonlinear_connection(ch2, jet, v);
    const auto [gamma, gamma_mixed] = horizontal_coefficients(ch2, jet, v, conn.N);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        Complex acc = 0.0;
        for (int i = 0; i < 2; ++i) acc += v[i] * gamma(j, i, k);
        CHECK(std::abs(acc - conn.N(j, k)) <= 1e-9);
      }
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          CHECK(gamma_mixed(j, i, k) == -ch2.lam_mixed_hol(j, i, k));  // exact, no numerics
  }
}

TEST_CASE("hermitian norms give the closed-form, direction-independent Gamma") {
  const auto ch2 = builtin_ch2(0.9, 1.7);
  const Eigen::MatrixXcd H = random_hermitian_pd(2, 21);
  const auto norm = NormSpec::hermitian(H);
  const Tensor3c expected = oracles::hermitian_gamma(ch2, H);
  Sampler s(22);
  Tensor3c first(2);
  for (int t = 0; t < 5; ++t) {
    const Eigen::VectorXcd v = s.unit_vector(2);
    const MetricJet jet = metric_jet(norm, v);
    const auto conn = nonlinear_connection(ch2, jet, v);
    const auto gamma = horizontal_coefficients(ch2, jet, v, conn.N).first;
    for (std::size_t q = 0; q < gamma.data().size(); ++q) {
      CHECK(std::abs(gamma.data()[q] - expected.data()[q]) <= 1e-10);
      if (t == 0)
        first.data()[q] = gamma.data()[q];
      else
        CHECK(std::abs(gamma.data()[q] - first.data()[q]) <= 1e-10);
    }
  }
}

TEST_CASE("complex-group-type algebras have vanishing Gamma for any norm") {
  const auto heis = builtin_complex_heisenberg();
  const std::vector<NormSpec> norms = {
      NormSpec::hermitian(random_hermitian_pd(3, 31)),
      NormSpec::perturbed_hermitian(Eigen::MatrixXcd::Identity(3, 3), 0.2, 2),
  };
  Sampler s(32);
  for (const auto& norm : norms)
    for (int t = 0; t < 30; ++t) {
      const Eigen::VectorXcd v = s.unit_vector(3);
      const MetricJet jet = metric_jet(norm, v);
      const auto conn = nonlinear_connection(heis, jet, v);
      const auto gamma = horizontal_coefficients(heis, jet, v, conn.N).first;
      CHECK(max_abs(gamma) <= 1e-10);
    }
}

TEST_CASE("torsion of the complex Heisenberg algebra is -lambda/2") {
  const auto heis = builtin_complex_heisenberg();
  for (const auto& norm :
       {NormSpec::hermitian(Eigen::MatrixXcd::Identity(3, 3)),
        NormSpec::perturbed_hermitian(Eigen::MatrixXcd::Identity(3, 3), 0.1, 2)}) {
    const Eigen::VectorXcd v = Eigen::VectorXcd::Unit(3, 0);
    const MetricJet jet = metric_jet(norm, v);
    const auto conn = nonlinear_connection(heis, jet, v);
    const Tensor3c T = torsion(heis, jet, v, conn.N);
    CHECK(std::abs(T(2, 0, 1) - Complex(-0.5)) <= 1e-12);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
          CHECK(std::abs(T(j, i, k) + 0.5 * heis.lam_hol(j, i, k)) <= 1e-12);
  }
}

TEST_CASE("torsion is antisymmetric in its lower indices") {
  const auto ch2 = builtin_ch2(2.0, 0.7);
  const auto pert = NormSpec::perturbed_hermitian(Eigen::MatrixXcd::Identity(2, 2), 0.1, 2);
  Sampler s(41);
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXcd v = s.unit_vector(2);
    const MetricJet jet = metric_jet(pert, v);
    const auto conn = nonlinear_connection(ch2, jet, v);
    const Tensor3c T = torsion(ch2, jet, v, conn.N);
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          CHECK(std::abs(T(j, i, k) + T(j, k, i)) <= 1e-12);
  }
}

TEST_CASE("hermitian torsion reduction to the closed form") {
  for (const auto& alg : {builtin_ch2(1.0, 1.0), builtin_ch2(1.8, 0.4)}) {
    const Eigen::MatrixXcd H = random_hermitian_pd(2, 51);
    const auto norm = NormSpec::hermitian(H);
    const Tensor3c expected = oracles::hermitian_torsion(alg, H);
    Sampler s(52);
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXcd v = s.unit_vector(2);
      const MetricJet jet = metric_jet(norm, v);
      const auto conn = nonlinear_connection(alg, jet, v);
      const Tensor3c T = torsion(alg, jet, v, conn.N);
      for (std::size_t q = 0; q < T.data().size(); ++q)
        CHECK(std::abs(T.data()[q] - expected.data()[q]) <= 1e-10);
    }
  }
}

TEST_CASE("ch2(1,1) with the identity metric is torsion-free") {
  const auto ch2 = builtin_ch2(1.0, 1.0);
  const auto norm = NormSpec::hermitian(Eigen::MatrixXcd::Identity(2, 2));
  const Eigen::VectorXcd e1 = Eigen::VectorXcd::Unit(2, 0);
  const MetricJet jet = metric_jet(norm, e1);
  const auto conn = nonlinear_connection(ch2, jet, e1);
  CHECK(max_abs(torsion(ch2, jet, e1, conn.N)) <= 1e-14);
}

TEST_CASE("connection operator") {
  const auto ch2 = builtin_ch2(1.0, 1.0);
  const auto norm = NormSpec::hermitian(Eigen::MatrixXcd::Identity(2, 2));
  const Eigen::VectorXcd e1 = Eigen::VectorXcd::Unit(2, 0);
  const Eigen::VectorXcd e2 = Eigen::VectorXcd::Unit(2, 1);
  const MetricJet jet = metric_jet(norm, e1);

  // w = e_k picks out column k of N
  const auto conn = nonlinear_connection(ch2, jet, e1);
  const Eigen::VectorXcd col = connection_operator(ch2, jet, e1, e2);
  CHECK((col - conn.N.col(1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(col[1] - Complex(-1.0 / std::sqrt(2.0))) <= 1e-14);

  // vanishes identically for complex-group type
  const auto heis = builtin_complex_heisenberg();
  const auto norm3 = NormSpec::hermitian(Eigen::MatrixXcd::Identity(3, 3));
  const Eigen::VectorXcd f1 = Eigen::VectorXcd::Unit(3, 0);
  CHECK(connection_operator(heis, metric_jet(norm3, f1), f1, Eigen::VectorXcd::Unit(3, 2))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("defining identity of the connection operator holds on random probes") {
  const auto ch2 = builtin_ch2(1.0, 1.0);
  const std::vector<NormSpec> norms = {
      NormSpec::hermitian(Eigen::MatrixXcd::Identity(2, 2)),
      NormSpec::hermitian(random_hermitian_pd(2, 61)),
      NormSpec::perturbed_hermitian(Eigen::MatrixXcd::Identity(2, 2), 0.1, 2),
  };
  Sampler s(62);
  for (const auto& norm : norms)
    for (int t = 0; t < 3; ++t) {
      const Eigen::VectorXcd v = s.unit_vector(2);
      const MetricJet jet = metric_jet(norm, v);
      CHECK(connection_operator_identity_residual(ch2, jet, v, 20, 63) <= 1e-8);
    }
}

TEST_CASE("chern_rund bundles all blocks consistently") {
  const auto ch2 = builtin_ch2(1.0, 1.0);
  const auto pert = NormSpec::perturbed_hermitian(Eigen::MatrixXcd::Identity(2, 2), 0.1, 2);
  Sampler s(71);
  const Eigen::VectorXcd v = s.unit_vector(2);
  const MetricJet jet = metric_jet(pert, v);
  const ConnectionData cd = chern_rund(ch2, jet, v);
  const auto conn = nonlinear_connection(ch2, jet, v);
  CHECK((cd.N - conn.N).cwiseAbs().maxCoeff() == 0.0);
  const auto T2 = torsion(ch2, jet, v, conn.N);
  for (std::size_t q = 0; q < T2.data().size(); ++q)
    CHECK(std::abs(cd.T.data()[q] - T2.data()[q]) == 0.0);
  // torsion equals the antisymmetrized Gamma difference
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        const Complex alt = 0.5 * (cd.Gamma(j, k, i) - cd.Gamma(j, i, k) - ch2.lam_hol(j, i, k));
        CHECK(std::abs(cd.T(j, i, k) - alt) <= 1e-12);
      }
  CHECK(cd.solve_residual <= 1e-10);
}
