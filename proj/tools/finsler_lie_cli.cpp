// Command-line front end: validation, complexification, curvature,
// classification, theorem verification and parameter sweeps over
// left-invariant complex Finsler metrics given by structure constants.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "finsler_lie/algebra.hpp"
#include "finsler_lie/classify.hpp"
#include "finsler_lie/connection.hpp"
#include "finsler_lie/curvature.hpp"
#include "finsler_lie/io.hpp"
#include "finsler_lie/norm.hpp"
#include "finsler_lie/sampling.hpp"

using namespace finsler_lie;

namespace {

// exit codes
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kParseError = 2;
constexpr int kValidationFailure = 3;
constexpr int kIntegrabilityFailure = 4;
constexpr int kZeroDirection = 5;
constexpr int kNotComplexGroup = 6;

int log_level() {
  const char* env = std::getenv("FINSLER_LIE_LOG");
  return env ? std::atoi(env) : 0;
}

void log_note(const std::string& msg) {
  if (log_level() > 0) std::cerr << "[finsler-lie] " << msg << "\n";
}

struct GlobalOptions {
  double tol_cls = kTolCls;
  double tol_jet = kTolJetDual;
  double tol_structural = kTolStructural;
  std::string diff = "dual";
  double fd_step = 0.0;
  int samples = 16;
  std::uint64_t seed = 12345;
  std::string format = "json";
  int jobs = 1;

  DiffConfig diff_config() const {
    DiffConfig cfg;
    cfg.mode = diff == "fd" ? DiffMode::fd : DiffMode::dual;
    cfg.fd_step = fd_step;
    return cfg;
  }
  ClassifyConfig classify_config() const {
    ClassifyConfig cfg;
    cfg.diff = diff_config();
    cfg.tol_cls = tol_cls;
    cfg.v_samples = samples;
    cfg.seed = seed;
    return cfg;
  }
};

/// Flat key/value view of a payload, used by the markdown and csv renderers.
using Fields = std::vector<std::pair<std::string, std::string>>;

struct CommandResult {
  std::string payload_json;
  Fields fields;
  std::string csv_override = {};  // full csv document, for tabular commands
};

void emit_report(const GlobalOptions& opt, const std::string& command,
                 const Fields& input_fields, const CommandResult& result,
                 std::chrono::steady_clock::time_point t0) {
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0).count();
  if (opt.format == "json") {
    JsonOut out;
    out.obj_open();
    out.key("command").value(command);
    out.key("inputs").obj_open();
    for (const auto& [k, v] : input_fields) out.key(k).value(v);
    out.obj_close();
    out.key("config").obj_open();
    out.key("tol_structural").value(opt.tol_structural);
    out.key("tol_jet").value(opt.tol_jet);
    out.key("tol_cls").value(opt.tol_cls);
    out.key("diff").value(opt.diff);
    out.key("fd_step").value(opt.fd_step);
    out.key("samples").value(opt.samples);
    out.key("seed").value(opt.seed);
    out.obj_close();
    out.key("payload").raw(result.payload_json);
    out.key("duration_ms").value(ms);
    out.obj_close();
    std::cout << out.str() << "\n";
  } else if (opt.format == "md") {
    std::cout << "# finsler-lie " << command << "\n\n";
    for (const auto& [k, v] : input_fields) std::cout << "- " << k << ": " << v << "\n";
    std::cout << "\n| key | value |\n|---|---|\n";
    for (const auto& [k, v] : result.fields) std::cout << "| " << k << " | " << v << " |\n";
  } else if (opt.format == "csv") {
    if (!result.csv_override.empty()) {
      std::cout << result.csv_override;
    } else {
      std::cout << "key,value\n";
      for (const auto& [k, v] : result.fields) std::cout << k << "," << v << "\n";
    }
  } else {
    throw InputError("unknown output format: " + opt.format);
  }
}

std::string fmt(double v) { return format_double(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

// ------------------------------------------------------------------ validate

CommandResult run_validate(const GlobalOptions& opt, const std::string& algebra_spec,
                           int& exit_code) {
  JsonOut out;
  Fields fields;
  bool pass = true;

  const bool real_file = !is_builtin_spec(algebra_spec) &&
                         sniff_algebra_file(algebra_spec) == AlgebraFileKind::real;
  out.obj_open();
  if (real_file) {
    const RealAlgebraFile file = load_real_algebra(algebra_spec);
    const ValidationReport rep = validate_real(file.algebra);
    out.key("schema").value("real");
    out.key("dim").value(file.algebra.dim());
    out.key("antisymmetry_residual").value(rep.antisymmetry_residual);
    out.key("jacobi_residual").value(rep.jacobi_residual);
    fields = {{"schema", "real"},
              {"dim", std::to_string(file.algebra.dim())},
              {"antisymmetry_residual", fmt(rep.antisymmetry_residual)},
              {"jacobi_residual", fmt(rep.jacobi_residual)}};
    pass = rep.pass;
    if (file.I) {
      double i2 = (file.I->operator*(*file.I) +
                   Eigen::MatrixXd::Identity(file.I->rows(), file.I->cols()))
                      .cwiseAbs()
                      .maxCoeff();
      out.key("i_squared_residual").value(i2);
      fields.emplace_back("i_squared_residual", fmt(i2));
      if (i2 < kTolStructural && rep.pass) {
        const auto nij = nijenhuis(file.algebra, AlmostComplexStructure(*file.I));
        out.key("nijenhuis_max").value(nij.max_abs);
        out.key("integrable").value(nij.integrable);
        fields.emplace_back("nijenhuis_max", fmt(nij.max_abs));
        fields.emplace_back("integrable", fmt(nij.integrable));
      } else {
        pass = false;
      }
    }
  } else {
    const AlgebraSource src = load_algebra(algebra_spec);
    const double anti = src.algebra.max_antisymmetry_residual();
    const double conj_res = src.algebra.max_conjugation_residual();
    const double jac = src.algebra.max_jacobi_residual();
    pass = anti < kTolStructural && conj_res < kTolStructural && jac < kTolStructural;
    out.key("schema").value("complexified");
    out.key("n").value(src.algebra.n());
    out.key("antisymmetry_residual").value(anti);
    out.key("conjugation_residual").value(conj_res);
    out.key("jacobi_residual").value(jac);
    out.key("complex_group_type").value(is_complex_group_type(src.algebra).is_complex_group_type);
    out.key("abelian").value(is_abelian(src.algebra));
    fields = {{"schema", "complexified"},
              {"n", std::to_string(src.algebra.n())},
              {"antisymmetry_residual", fmt(anti)},
              {"conjugation_residual", fmt(conj_res)},
              {"jacobi_residual", fmt(jac)}};
  }
  out.key("pass").value(pass);
  fields.emplace_back("pass", fmt(pass));
  out.obj_close();
  exit_code = pass ? kOk : kValidationFailure;
  (void)opt;
  return {out.str(), fields};
}

// ---------------------------------------------------------------- complexify

CommandResult run_complexify(const GlobalOptions& opt, const std::string& algebra_spec,
                             const std::vector<double>& weights, const std::string& out_file) {
  const RealAlgebraFile file = load_real_algebra(algebra_spec);
  if (!file.I) throw InputError("complexify requires the real-algebra file to carry an I matrix");
  const ValidationReport rep = validate_real(file.algebra);
  if (!rep.pass) {
    std::ostringstream os;
    os << "real algebra fails validation (antisymmetry " << rep.antisymmetry_residual
       << ", jacobi " << rep.jacobi_residual << ")";
    throw InputError(os.str());
  }
  std::vector<double> w = weights.empty() ? file.weights : weights;
  const ComplexifyResult cx = complexify(file.algebra, AlmostComplexStructure(*file.I), w);
  const std::string algebra_json = complexified_to_json(cx.algebra);
  if (!out_file.empty()) {
    std::ofstream os(out_file, std::ios::binary);
    if (!os) throw InputError("cannot write output file: " + out_file);
    os << algebra_json << "\n";
  }
  JsonOut out;
  out.obj_open();
  out.key("n").value(cx.algebra.n());
  out.key("closure_residual").value(cx.closure_residual);
  out.key("jacobi_residual").value(cx.algebra.max_jacobi_residual());
  out.key("weights").arr_open();
  for (double wi : cx.weights) out.value(wi);
  out.arr_close();
  out.key("algebra").raw(algebra_json);
  out.obj_close();
  Fields fields = {{"n", std::to_string(cx.algebra.n())},
                   {"closure_residual", fmt(cx.closure_residual)},
                   {"jacobi_residual", fmt(cx.algebra.max_jacobi_residual())}};
  (void)opt;
  return {out.str(), fields};
}

// ----------------------------------------------------------------- curvature

CommandResult run_curvature(const GlobalOptions& opt, const AlgebraSource& alg,
                            const NormSource& norm, const Eigen::VectorXcd& v,
                            const Eigen::VectorXcd* w) {
  const DiffConfig diff = opt.diff_config();
  const CurvatureData data = curvature_block(alg.algebra, norm.norm, v, diff);
  const double K = holomorphic_sectional(alg.algebra, norm.norm, v, diff);
  const BisectionalResult Kb = bisectional(alg.algebra, norm.norm, v, v, diff);

  // operator/index agreement for w (or v itself)
  const Eigen::VectorXcd probe = w ? *w : v;
  const Eigen::VectorXcd op_index = curvature_operator(alg.algebra, norm.norm, v, probe, diff);
  const Eigen::VectorXcd op_cf =
      curvature_operator_coordinate_free(alg.algebra, norm.norm, v, probe, diff);
  const double op_agreement = (op_index - op_cf).cwiseAbs().maxCoeff();

  JsonOut out;
  out.obj_open();
  out.key("K").value(K);
  out.key("K_imag_residual").value(Kb.imag_residual);
  Fields fields = {{"K", fmt(K)}};
  if (w) {
    const BisectionalResult b = bisectional(alg.algebra, norm.norm, v, *w, diff);
    out.key("B").value(b.value);
    out.key("B_imag_residual").value(b.imag_residual);
    fields.emplace_back("B", fmt(b.value));
    fields.emplace_back("B_imag_residual", fmt(b.imag_residual));
  }
  out.key("operator_index_agreement").value(op_agreement);
  fields.emplace_back("operator_index_agreement", fmt(op_agreement));
  const int n = alg.algebra.n();
  out.key("r_block").arr_open();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        if (std::abs(data.R_block(i, k, j)) > 0.0) {
          out.obj_open();
          out.key("i").value(i + 1);
          out.key("k").value(k + 1);
          out.key("j").value(j + 1);
          out.key("re").value(data.R_block(i, k, j).real());
          out.key("im").value(data.R_block(i, k, j).imag());
          out.obj_close();
        }
  out.arr_close();
  out.obj_close();
  return {out.str(), fields};
}

// ------------------------------------------------------------------ classify

CommandResult run_classify(const GlobalOptions& opt, const AlgebraSource& alg,
                           const NormSource& norm) {
  const ClassificationReport rep = classify(alg.algebra, norm.norm, opt.classify_config());
  JsonOut out;
  out.obj_open();
  out.key("kahler_residual").value(rep.kahler_residual);
  out.key("weakly_kahler_residual").value(rep.weakly_kahler_residual);
  out.key("berwald_residual").obj_open();
  out.key("spread").value(rep.berwald.spread);
  out.key("max_dv").value(rep.berwald.max_dv);
  out.key("max_dvbar").value(rep.berwald.max_dvbar);
  out.key("total").value(rep.berwald.total());
  out.obj_close();
  out.key("bisectional_max").value(rep.bisectional_max);
  out.key("is_complex_group_type").value(rep.is_complex_group_type);
  out.key("is_abelian").value(rep.is_abelian);
  out.key("verdict_kahler").value(rep.verdict_kahler);
  out.key("verdict_weakly_kahler").value(rep.verdict_weakly_kahler);
  out.key("verdict_berwald").value(rep.verdict_berwald);
  out.key("kahler_implies_weakly_ok").value(rep.kahler_implies_weakly_ok);
  out.key("tol_cls").value(rep.tol_cls);
  out.key("v_samples").value(rep.v_samples);
  out.key("seed").value(rep.seed);
  out.obj_close();
  Fields fields = {{"kahler_residual", fmt(rep.kahler_residual)},
                   {"weakly_kahler_residual", fmt(rep.weakly_kahler_residual)},
                   {"berwald_residual", fmt(rep.berwald.total())},
                   {"bisectional_max", fmt(rep.bisectional_max)},
                   {"verdict_kahler", fmt(rep.verdict_kahler)},
                   {"verdict_weakly_kahler", fmt(rep.verdict_weakly_kahler)},
                   {"verdict_berwald", fmt(rep.verdict_berwald)}};
  return {out.str(), fields};
}

// ----------------------------------------------------------- verify-theorems

CommandResult run_verify_theorems(const GlobalOptions& opt, const AlgebraSource& alg,
                                  const NormSource& norm, int& exit_code) {
  const TheoremReport rep = verify_complex_group_theorems(alg.algebra, norm.norm,
                                                          opt.classify_config());
  JsonOut out;
  out.obj_open();
  out.key("gamma_max").value(rep.gamma_max);
  out.key("bisectional_max").value(rep.bisectional_max);
  out.key("torsion_vs_minus_half_lambda").value(rep.torsion_vs_minus_half_lambda);
  out.key("kahler_iff_abelian_consistent").value(rep.kahler_iff_abelian_consistent);
  out.key("is_abelian").value(rep.is_abelian);
  out.key("verdict_kahler").value(rep.verdict_kahler);
  out.key("pass").value(rep.pass);
  out.obj_close();
  Fields fields = {{"gamma_max", fmt(rep.gamma_max)},
                   {"bisectional_max", fmt(rep.bisectional_max)},
                   {"torsion_vs_minus_half_lambda", fmt(rep.torsion_vs_minus_half_lambda)},
                   {"kahler_iff_abelian_consistent", fmt(rep.kahler_iff_abelian_consistent)},
                   {"pass", fmt(rep.pass)}};
  exit_code = rep.pass ? kOk : kValidationFailure;
  return {out.str(), fields};
}

// --------------------------------------------------------------------- sweep

struct GridAxis {
  std::string name;
  std::vector<std::string> values;
};

std::vector<GridAxis> parse_grid(const std::string& spec) {
  std::vector<GridAxis> axes;
  std::istringstream in(spec);
  std::string part;
  while (std::getline(in, part, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw InputError("malformed grid axis: " + part);
    GridAxis axis;
    axis.name = part.substr(0, eq);
    std::istringstream vals(part.substr(eq + 1));
    std::string v;
    while (std::getline(vals, v, ',')) axis.values.push_back(v);
    if (axis.values.empty()) throw InputError("empty grid axis: " + axis.name);
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) throw InputError("empty grid");
  return axes;
}

std::string substitute(std::string tmpl, const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [k, v] : kv) {
    const std::string pat = "{" + k + "}";
    for (std::size_t pos = tmpl.find(pat); pos != std::string::npos; pos = tmpl.find(pat))
      tmpl.replace(pos, pat.size(), v);
  }
  return tmpl;
}

struct SweepRow {
  std::vector<std::pair<std::string, std::string>> params;
  bool ok = false;
  std::string error;
  double k_min = 0, k_max = 0;
  double kahler = 0, weakly = 0, berwald = 0;
};

CommandResult run_sweep(const GlobalOptions& opt, const std::string& algebra_template,
                        const std::string& norm_template, const std::string& grid_spec) {
  const auto axes = parse_grid(grid_spec);
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.values.size();

  std::vector<SweepRow> rows(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (const auto& a : axes) {
      rows[idx].params.emplace_back(a.name, a.values[rem % a.values.size()]);
      rem /= a.values.size();
    }
  }

  auto eval_row = [&](SweepRow& row) {
    try {
      const AlgebraSource alg = load_algebra(substitute(algebra_template, row.params));
      const NormSource norm = load_norm(substitute(norm_template, row.params), alg.algebra.n());
      if (norm.norm.dim() != alg.algebra.n())
        throw InputError("norm and algebra dimensions differ");
      ClassifyConfig ccfg = opt.classify_config();
      ccfg.bisectional_samples = 8;
      const ClassificationReport rep = classify(alg.algebra, norm.norm, ccfg);
      row.kahler = rep.kahler_residual;
      row.weakly = rep.weakly_kahler_residual;
      row.berwald = rep.berwald.total();
      double kmin = std::numeric_limits<double>::infinity(), kmax = -kmin;
      for (const auto& v : quasi_unit_vectors(alg.algebra.n(), opt.samples)) {
        const double K = holomorphic_sectional(alg.algebra, norm.norm, v, opt.diff_config());
        kmin = std::min(kmin, K);
        kmax = std::max(kmax, K);
      }
      row.k_min = kmin;
      row.k_max = kmax;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  };

  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    for (auto& row : rows) eval_row(row);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1))
          eval_row(rows[i]);
      });
    for (auto& th : pool) th.join();
  }

  JsonOut out;
  out.obj_open();
  out.key("rows").arr_open();
  for (const auto& row : rows) {
    out.obj_open();
    for (const auto& [k, v] : row.params) out.key(k).value(v);
    out.key("ok").value(row.ok);
    if (row.ok) {
      out.key("K_min").value(row.k_min);
      out.key("K_max").value(row.k_max);
      out.key("kahler_residual").value(row.kahler);
      out.key("weakly_kahler_residual").value(row.weakly);
      out.key("berwald_residual").value(row.berwald);
    } else {
      out.key("error").value(row.error);
    }
    out.obj_close();
  }
  out.arr_close();
  out.obj_close();

  Fields fields;
  std::string csv;
  for (const auto& a : axes) csv += a.name + ",";
  csv += "ok,K_min,K_max,kahler_residual,weakly_kahler_residual,berwald_residual,error\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string label;
    for (const auto& [k, v] : rows[i].params) {
      label += k + "=" + v + " ";
      csv += v + ",";
    }
    if (rows[i].ok) {
      fields.emplace_back(label, "K in [" + fmt(rows[i].k_min) + ", " + fmt(rows[i].k_max) + "]");
      csv += "true," + fmt(rows[i].k_min) + "," + fmt(rows[i].k_max) + "," + fmt(rows[i].kahler) +
             "," + fmt(rows[i].weakly) + "," + fmt(rows[i].berwald) + ",\n";
    } else {
      std::string err = rows[i].error;
      for (auto& ch : err)
        if (ch == ',' || ch == '\n') ch = ';';
      fields.emplace_back(label, "error: " + rows[i].error);
      csv += "false,,,,,," + err + "\n";
    }
  }
  return {out.str(), fields, csv};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvature and classification of left-invariant complex Finsler metrics"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opt;
  app.add_option("--tol", opt.tol_cls, "classification tolerance");
  app.add_option("--tol-jet", opt.tol_jet, "jet identity tolerance");
  app.add_option("--diff", opt.diff, "differentiation engine (dual|fd)")
      ->check(CLI::IsMember({"dual", "fd"}));
  app.add_option("--fd-step", opt.fd_step, "finite-difference base step (0 = auto)");
  app.add_option("--samples", opt.samples, "sample count for residual sweeps");
  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--format", opt.format, "output format (json|md|csv)")
      ->check(CLI::IsMember({"json", "md", "csv"}));
  app.add_option("--jobs", opt.jobs, "concurrent sweep evaluations");

  std::string algebra_spec, norm_spec, v_arg, w_arg, out_file, grid_spec;
  std::vector<double> weights;

  auto* validate = app.add_subcommand("validate", "validate an algebra file or builtin");
  validate->add_option("algebra", algebra_spec)->required();

  auto* complexify_cmd =
      app.add_subcommand("complexify", "split a real algebra with integrable I into g^{1,0}");
  complexify_cmd->add_option("algebra", algebra_spec, "real-algebra JSON with I")->required();
  complexify_cmd->add_option("--weights", weights, "basis weights (default 1/sqrt(2) each)");
  complexify_cmd->add_option("--out", out_file, "write the complexified algebra JSON here");

  auto* curvature_cmd = app.add_subcommand("curvature", "holomorphic sectional and bisectional curvature");
  curvature_cmd->add_option("algebra", algebra_spec)->required();
  curvature_cmd->add_option("norm", norm_spec)->required();
  curvature_cmd->add_option("--v", v_arg, "direction, e.g. 1,0 or 1:0,0:2")->required();
  curvature_cmd->add_option("--w", w_arg, "second direction for B(v,w)");

  auto* classify_cmd = app.add_subcommand("classify", "Kahler / weakly-Kahler / Berwald verdicts");
  classify_cmd->add_option("algebra", algebra_spec)->required();
  classify_cmd->add_option("norm", norm_spec)->required();

  auto* verify_cmd =
      app.add_subcommand("verify-theorems", "rigidity checks for complex-group-type algebras");
  verify_cmd->add_option("algebra", algebra_spec)->required();
  verify_cmd->add_option("norm", norm_spec)->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "classify over a parameter grid");
  sweep_cmd->add_option("--algebra-template", algebra_spec, "builtin spec with {param} holes")
      ->required();
  sweep_cmd->add_option("--norm-template", norm_spec)->required();
  sweep_cmd->add_option("--grid", grid_spec, "e.g. beta=0.5,1,2;gamma=0.5,1,2")->required();

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  int exit_code = kOk;
  const auto input_digest = [](const std::string& spec) {
    return is_builtin_spec(spec) ? digest_hex(spec) : digest_hex(read_file(spec));
  };
  try {
    if (validate->parsed()) {
      const auto result = run_validate(opt, algebra_spec, exit_code);
      emit_report(opt, "validate",
                  {{"algebra", algebra_spec}, {"algebra_digest", input_digest(algebra_spec)}},
                  result, t0);
    } else if (complexify_cmd->parsed()) {
      const auto result = run_complexify(opt, algebra_spec, weights, out_file);
      emit_report(opt, "complexify",
                  {{"algebra", algebra_spec}, {"algebra_digest", input_digest(algebra_spec)}},
                  result, t0);
    } else if (curvature_cmd->parsed()) {
      const Eigen::VectorXcd v = parse_vector_arg(v_arg);
      if (v.cwiseAbs().maxCoeff() == 0.0) {
        std::cerr << "error: direction v must be nonzero\n";
        return kZeroDirection;
      }
      const AlgebraSource alg = load_algebra(algebra_spec);
      const NormSource norm = load_norm(norm_spec, alg.algebra.n());
      Eigen::VectorXcd w;
      const bool has_w = !w_arg.empty();
      if (has_w) w = parse_vector_arg(w_arg);
      const auto result = run_curvature(opt, alg, norm, v, has_w ? &w : nullptr);
      emit_report(opt, "curvature",
                  {{"algebra", algebra_spec},
                   {"algebra_digest", alg.digest},
                   {"norm", norm_spec},
                   {"norm_digest", norm.digest}},
                  result, t0);
    } else if (classify_cmd->parsed()) {
      const AlgebraSource alg = load_algebra(algebra_spec);
      const NormSource norm = load_norm(norm_spec, alg.algebra.n());
      const auto result = run_classify(opt, alg, norm);
      emit_report(opt, "classify",
                  {{"algebra", algebra_spec},
                   {"algebra_digest", alg.digest},
                   {"norm", norm_spec},
                   {"norm_digest", norm.digest}},
                  result, t0);
    } else if (verify_cmd->parsed()) {
      const AlgebraSource alg = load_algebra(algebra_spec);
      const NormSource norm = load_norm(norm_spec, alg.algebra.n());
      const auto result = run_verify_theorems(opt, alg, norm, exit_code);
      emit_report(opt, "verify-theorems",
                  {{"algebra", algebra_spec},
                   {"algebra_digest", alg.digest},
                   {"norm", norm_spec},
                   {"norm_digest", norm.digest}},
                  result, t0);
    } else if (sweep_cmd->parsed()) {
      const auto result = run_sweep(opt, algebra_spec, norm_spec, grid_spec);
      emit_report(opt, "sweep",
                  {{"algebra_template", algebra_spec},
                   {"norm_template", norm_spec},
                   {"grid", grid_spec}},
                  result, t0);
    }
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const IntegrabilityError& e) {
    std::cerr << "integrability error: " << e.what() << "\n";
    return kIntegrabilityFailure;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kNotComplexGroup;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kParseError;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kParseError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  log_note("done");
  return exit_code;
}
