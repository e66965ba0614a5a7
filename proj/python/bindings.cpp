#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "finsler_lie/algebra.hpp"
#include "finsler_lie/classify.hpp"
#include "finsler_lie/connection.hpp"
#include "finsler_lie/curvature.hpp"
#include "finsler_lie/io.hpp"
#include "finsler_lie/norm.hpp"

namespace py = pybind11;
using namespace finsler_lie;

namespace {

py::array_t<Complex> tensor_to_array(const Tensor3c& t) {
  const int n = t.dim();
  py::array_t<Complex> out({n, n, n});
  auto buf = out.mutable_unchecked<3>();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) buf(i, j, k) = t(i, j, k);
  return out;
}

RealLieAlgebra real_algebra_from_dense(const py::array_t<double>& c) {
  if (c.ndim() != 3 || c.shape(0) != c.shape(1) || c.shape(1) != c.shape(2))
    throw InputError("c must be a (dim, dim, dim) array with c[k, i, j] = c^k_{ij}");
  const int d = static_cast<int>(c.shape(0));
  auto buf = c.unchecked<3>();
  std::vector<RealStructureEntry> entries;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (buf(k, i, j) != 0.0) entries.push_back({k + 1, i + 1, j + 1, buf(k, i, j)});
  return RealLieAlgebra::from_entries(d, entries);
}

DiffConfig make_diff(const std::string& mode, double fd_step, bool richardson) {
  DiffConfig cfg;
  if (mode == "dual")
    cfg.mode = DiffMode::dual;
  else if (mode == "fd")
    cfg.mode = DiffMode::fd;
  else
    throw InputError("mode must be 'dual' or 'fd'");
  cfg.fd_step = fd_step;
  cfg.richardson = richardson;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_finsler_lie, m) {
  m.doc() = "Chern-Rund connection, torsion and holomorphic curvature of "
            "left-invariant complex Finsler metrics on Lie groups";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<IntegrabilityError>(m, "IntegrabilityError", PyExc_ValueError);
  py::register_exception<ClosureError>(m, "ClosureError", PyExc_RuntimeError);
  py::register_exception<StronglyPseudoconvexViolation>(m, "StronglyPseudoconvexViolation",
                                                        PyExc_ArithmeticError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  py::class_<DiffConfig>(m, "DiffConfig")
      .def(py::init(&make_diff), py::arg("mode") = "dual", py::arg("fd_step") = 0.0,
           py::arg("richardson") = true);

  py::class_<RealLieAlgebra>(m, "RealLieAlgebra")
      .def_static("from_dense", &real_algebra_from_dense, py::arg("c"))
      .def_property_readonly("dim", &RealLieAlgebra::dim)
      .def("bracket", &RealLieAlgebra::bracket);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("antisymmetry_residual", &ValidationReport::antisymmetry_residual)
      .def_readonly("jacobi_residual", &ValidationReport::jacobi_residual)
      .def_readonly("pass_", &ValidationReport::pass);

  m.def("validate_real", &validate_real);

  py::class_<AlmostComplexStructure>(m, "AlmostComplexStructure")
      .def(py::init<Eigen::MatrixXd>())
      .def_property_readonly("matrix", &AlmostComplexStructure::matrix);

  m.def(
      "nijenhuis",
      [](const RealLieAlgebra& alg, const AlmostComplexStructure& I) {
        const auto r = nijenhuis(alg, I);
        const int d = alg.dim();
        py::array_t<double> t({d, d, d});
        auto buf = t.mutable_unchecked<3>();
        for (int a = 0; a < d; ++a)
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) buf(a, i, j) = r.tensor(a, i, j);
        return py::make_tuple(t, r.max_abs, r.integrable);
      },
      "Nijenhuis tensor over basis pairs; returns (tensor, max_abs, integrable)");

  py::class_<ComplexifiedAlgebra>(m, "ComplexifiedAlgebra")
      .def_property_readonly("n", &ComplexifiedAlgebra::n)
      .def("lambda_hol", [](const ComplexifiedAlgebra& a) { return tensor_to_array(a.hol_block()); })
      .def("lambda_mixed_hol",
           [](const ComplexifiedAlgebra& a) { return tensor_to_array(a.mixed_hol_block()); })
      .def("lambda_mixed_anti",
           [](const ComplexifiedAlgebra& a) { return tensor_to_array(a.mixed_anti_block()); })
      .def("antisymmetry_residual", &ComplexifiedAlgebra::max_antisymmetry_residual)
      .def("conjugation_residual", &ComplexifiedAlgebra::max_conjugation_residual)
      .def("jacobi_residual", &ComplexifiedAlgebra::max_jacobi_residual);

  m.def("complexify",
        [](const RealLieAlgebra& alg, const AlmostComplexStructure& I,
           std::vector<double> weights) {
          auto r = complexify(alg, I, std::move(weights));
          return py::make_tuple(r.algebra, r.closure_residual);
        },
        py::arg("algebra"), py::arg("I"), py::arg("weights") = std::vector<double>{});
  m.def("decomplexify", [](const ComplexifiedAlgebra& alg) {
    auto r = decomplexify(alg);
    return py::make_tuple(r.algebra, r.I, r.roundtrip_weights);
  });

  m.def("is_complex_group_type", [](const ComplexifiedAlgebra& alg) {
    const auto r = is_complex_group_type(alg);
    return py::make_tuple(r.is_complex_group_type, r.max_mixed);
  });
  m.def("is_abelian", &is_abelian);
  m.def("bracket_hol_antihol_10", &bracket_hol_antihol_10,
        "(1,0)-part of [v, conj(w)] for holomorphic coordinate vectors");
  m.def("bracket", [](const ComplexifiedAlgebra& alg, const Eigen::VectorXcd& a_hol,
                      const Eigen::VectorXcd& a_anti, const Eigen::VectorXcd& b_hol,
                      const Eigen::VectorXcd& b_anti) {
    const auto r = bracket(alg, AlgebraElement{a_hol, a_anti}, AlgebraElement{b_hol, b_anti});
    return py::make_tuple(r.hol, r.anti_conj);
  });

  m.def("builtin_abelian", &builtin_abelian, py::arg("n"));
  m.def("builtin_complex_heisenberg", &builtin_complex_heisenberg);
  m.def("builtin_ch2", &builtin_ch2, py::arg("beta"), py::arg("gamma"));
  m.def("builtin_ch2_real", [](double beta, double gamma) {
    auto d = builtin_ch2_real(beta, gamma);
    return py::make_tuple(d.algebra, d.I, d.weights);
  }, py::arg("beta"), py::arg("gamma"));

  m.def("parse_algebra_json", &parse_complexified_json);
  m.def("algebra_to_json", &complexified_to_json);
  m.def("parse_norm_json", &parse_norm_json);
  m.def("norm_to_json", &norm_to_json);

  py::class_<NormSpec>(m, "NormSpec")
      .def_static("hermitian", &NormSpec::hermitian, py::arg("h"))
      .def_static("perturbed_hermitian", &NormSpec::perturbed_hermitian, py::arg("h"),
                  py::arg("epsilon"), py::arg("p"))
      .def_static("custom", &NormSpec::custom, py::arg("n"), py::arg("f2"))
      .def_property_readonly("dim", &NormSpec::dim);

  m.def("f_squared", &f_squared);

  py::class_<MetricJet>(m, "MetricJet")
      .def_readonly("F2", &MetricJet::F2)
      .def_readonly("g", &MetricJet::g)
      .def_readonly("g_inv", &MetricJet::g_inv)
      .def_readonly("g_antihol", &MetricJet::g_antihol)
      .def_property_readonly("C_plus", [](const MetricJet& j) { return tensor_to_array(j.C_plus); })
      .def_property_readonly("C_minus",
                             [](const MetricJet& j) { return tensor_to_array(j.C_minus); })
      .def_readonly("min_g_eigenvalue", &MetricJet::min_g_eigenvalue);

  m.def("metric_jet", &metric_jet, py::arg("norm"), py::arg("v"),
        py::arg("cfg") = DiffConfig{});
  m.def("check_homogeneity", &check_homogeneity);
  m.def("check_pseudoconvexity", &check_pseudoconvexity, py::arg("norm"), py::arg("sample_count"),
        py::arg("seed"), py::arg("cfg") = DiffConfig{});
  m.def("euler_residuals", [](const MetricJet& jet, const Eigen::VectorXcd& v) {
    const auto r = euler_residuals(jet, v);
    return py::make_tuple(r.g_vv, r.c_plus_v, r.c_minus_v, r.c_antihol);
  });

  py::class_<ConnectionData>(m, "ConnectionData")
      .def_readonly("N", &ConnectionData::N)
      .def_readonly("N_bar_arg", &ConnectionData::N_bar_arg)
      .def_property_readonly("Gamma",
                             [](const ConnectionData& c) { return tensor_to_array(c.Gamma); })
      .def_property_readonly("Gamma_mixed",
                             [](const ConnectionData& c) { return tensor_to_array(c.Gamma_mixed); })
      .def_property_readonly("T", [](const ConnectionData& c) { return tensor_to_array(c.T); })
      .def_readonly("solve_residual", &ConnectionData::solve_residual);

  m.def("chern_rund", &chern_rund);
  m.def("nonlinear_connection", [](const ComplexifiedAlgebra& alg, const MetricJet& jet,
                                   const Eigen::VectorXcd& v) {
    const auto r = nonlinear_connection(alg, jet, v);
    return py::make_tuple(r.N, r.N_bar_arg, r.solve_residual);
  });
  m.def("connection_operator", &connection_operator);

  py::class_<CurvatureData>(m, "CurvatureData")
      .def_readonly("N", &CurvatureData::N)
      .def_property_readonly("R_block",
                             [](const CurvatureData& c) { return tensor_to_array(c.R_block); })
      .def_property_readonly("dN_dv",
                             [](const CurvatureData& c) { return tensor_to_array(c.dN_dv); })
      .def_property_readonly("dN_dvbar",
                             [](const CurvatureData& c) { return tensor_to_array(c.dN_dvbar); });

  m.def("curvature_block", &curvature_block, py::arg("algebra"), py::arg("norm"), py::arg("v"),
        py::arg("cfg") = DiffConfig{});
  m.def("curvature_operator", &curvature_operator, py::arg("algebra"), py::arg("norm"),
        py::arg("v"), py::arg("w"), py::arg("cfg") = DiffConfig{});
  m.def("curvature_operator_coordinate_free", &curvature_operator_coordinate_free,
        py::arg("algebra"), py::arg("norm"), py::arg("v"), py::arg("w"),
        py::arg("cfg") = DiffConfig{});
  m.def("bisectional",
        [](const ComplexifiedAlgebra& alg, const NormSpec& norm, const Eigen::VectorXcd& v,
           const Eigen::VectorXcd& w, const DiffConfig& cfg) {
          const auto r = bisectional(alg, norm, v, w, cfg);
          return py::make_tuple(r.value, r.imag_residual);
        },
        py::arg("algebra"), py::arg("norm"), py::arg("v"), py::arg("w"),
        py::arg("cfg") = DiffConfig{});
  m.def("holomorphic_sectional", &holomorphic_sectional, py::arg("algebra"), py::arg("norm"),
        py::arg("v"), py::arg("cfg") = DiffConfig{});

  py::class_<ClassifyConfig>(m, "ClassifyConfig")
      .def(py::init([](const DiffConfig& diff, double tol_cls, int probe_count, int v_samples,
                       std::uint64_t seed) {
             ClassifyConfig cfg;
             cfg.diff = diff;
             cfg.tol_cls = tol_cls;
             cfg.probe_count = probe_count;
             cfg.v_samples = v_samples;
             cfg.seed = seed;
             return cfg;
           }),
           py::arg("diff") = DiffConfig{}, py::arg("tol_cls") = kTolCls,
           py::arg("probe_count") = 0, py::arg("v_samples") = 16, py::arg("seed") = 12345);

  m.def("kahler_residual", &kahler_residual, py::arg("algebra"), py::arg("norm"), py::arg("v"),
        py::arg("probe_count") = 0, py::arg("seed") = 12345, py::arg("diff") = DiffConfig{});
  m.def("weakly_kahler_residual", &weakly_kahler_residual, py::arg("algebra"), py::arg("norm"),
        py::arg("v"), py::arg("probe_count") = 0, py::arg("seed") = 12345,
        py::arg("diff") = DiffConfig{});
  m.def("berwald_residual",
        [](const ComplexifiedAlgebra& alg, const NormSpec& norm, int samples, std::uint64_t seed,
           const DiffConfig& diff) {
          const auto r = berwald_residual(alg, norm, samples, seed, diff);
          return py::make_tuple(r.spread, r.max_dv, r.max_dvbar, r.total());
        },
        py::arg("algebra"), py::arg("norm"), py::arg("samples") = 4, py::arg("seed") = 12345,
        py::arg("diff") = DiffConfig{});

  py::class_<ClassificationReport>(m, "ClassificationReport")
      .def_readonly("kahler_residual", &ClassificationReport::kahler_residual)
      .def_readonly("weakly_kahler_residual", &ClassificationReport::weakly_kahler_residual)
      .def_property_readonly("berwald_residual",
                             [](const ClassificationReport& r) { return r.berwald.total(); })
      .def_readonly("bisectional_max", &ClassificationReport::bisectional_max)
      .def_readonly("is_complex_group_type", &ClassificationReport::is_complex_group_type)
      .def_readonly("is_abelian", &ClassificationReport::is_abelian)
      .def_readonly("verdict_kahler", &ClassificationReport::verdict_kahler)
      .def_readonly("verdict_weakly_kahler", &ClassificationReport::verdict_weakly_kahler)
      .def_readonly("verdict_berwald", &ClassificationReport::verdict_berwald)
      .def_readonly("kahler_implies_weakly_ok", &ClassificationReport::kahler_implies_weakly_ok);

  m.def("classify", &classify, py::arg("algebra"), py::arg("norm"),
        py::arg("cfg") = ClassifyConfig{});

  py::class_<TheoremReport>(m, "TheoremReport")
      .def_readonly("gamma_max", &TheoremReport::gamma_max)
      .def_readonly("bisectional_max", &TheoremReport::bisectional_max)
      .def_readonly("torsion_vs_minus_half_lambda", &TheoremReport::torsion_vs_minus_half_lambda)
      .def_readonly("kahler_iff_abelian_consistent",
                    &TheoremReport::kahler_iff_abelian_consistent)
      .def_readonly("is_abelian", &TheoremReport::is_abelian)
      .def_readonly("verdict_kahler", &TheoremReport::verdict_kahler)
      .def_readonly("pass_", &TheoremReport::pass);

  m.def("verify_complex_group_theorems", &verify_complex_group_theorems, py::arg("algebra"),
        py::arg("norm"), py::arg("cfg") = ClassifyConfig{});
}
