#include "finsler_lie/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace finsler_lie {

using nlohmann::json;

// ---------------------------------------------------------------- JsonOut

void JsonOut::comma() {
  if (!first_.empty()) {
    if (!pending_key_) {
      if (!first_.back()) out_ += ',';
      first_.back() = false;
    }
  }
  pending_key_ = false;
}

JsonOut& JsonOut::obj_open() {
  comma();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonOut& JsonOut::obj_close() {
  out_ += '}';
  first_.pop_back();
  return *this;
}

JsonOut& JsonOut::arr_open() {
  comma();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonOut& JsonOut::arr_close() {
  out_ += ']';
  first_.pop_back();
  return *this;
}

JsonOut& JsonOut::key(const std::string& k) {
  comma();
  out_ += '"';
  out_ += k;
  out_ += "\":";
  pending_key_ = true;
  return *this;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JsonOut& JsonOut::value(double v) {
  comma();
  out_ += format_double(v);
  return *this;
}

JsonOut& JsonOut::value(std::int64_t v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}

JsonOut& JsonOut::value(std::uint64_t v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}

JsonOut& JsonOut::value(bool v) {
  comma();
  out_ += v ? "true" : "false";
  return *this;
}

JsonOut& JsonOut::value(const std::string& v) {
  comma();
  out_ += json(v).dump();  // escaping
  return *this;
}

JsonOut& JsonOut::value(const Complex& z) {
  comma();
  out_ += "{\"re\":";
  out_ += format_double(z.real());
  out_ += ",\"im\":";
  out_ += format_double(z.imag());
  out_ += '}';
  return *this;
}

JsonOut& JsonOut::raw(const std::string& json_text) {
  comma();
  out_ += json_text;
  return *this;
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// ---------------------------------------------------------------- builtins

bool is_builtin_spec(const std::string& spec) { return spec.rfind("builtin:", 0) == 0; }

namespace {

struct BuiltinSpec {
  std::string name;
  std::map<std::string, std::string> params;
};

BuiltinSpec parse_builtin(const std::string& spec) {
  BuiltinSpec out;
  std::string rest = spec.substr(8);
  const auto qpos = rest.find('?');
  out.name = rest.substr(0, qpos);
  if (qpos != std::string::npos) {
    std::istringstream qs(rest.substr(qpos + 1));
    std::string tok;
    while (std::getline(qs, tok, '&')) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw InputError("malformed builtin parameter: " + tok);
      out.params[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
  }
  return out;
}

double param_double(const BuiltinSpec& b, const std::string& key, double fallback,
                    bool required = false) {
  auto it = b.params.find(key);
  if (it == b.params.end()) {
    if (required) throw InputError("builtin '" + b.name + "' requires parameter '" + key + "'");
    return fallback;
  }
  std::size_t pos = 0;
  const double v = std::stod(it->second, &pos);
  if (pos != it->second.size()) throw InputError("malformed numeric parameter: " + it->second);
  return v;
}

Complex parse_complex_entry(const json& j) {
  return {j.value("re", 0.0), j.value("im", 0.0)};
}

std::vector<ComplexStructureEntry> parse_entry_list(const json& arr) {
  std::vector<ComplexStructureEntry> out;
  for (const auto& e : arr)
    out.push_back({e.at("i").get<int>(), e.at("j").get<int>(), e.at("k").get<int>(),
                   parse_complex_entry(e)});
  return out;
}

}  // namespace

ComplexifiedAlgebra parse_complexified_json(const std::string& text) {
  const json j = json::parse(text);
  const int n = j.at("n").get<int>();
  auto hol = j.contains("lambda_hol") ? parse_entry_list(j["lambda_hol"])
                                      : std::vector<ComplexStructureEntry>{};
  auto mh = j.contains("lambda_mixed_hol") ? parse_entry_list(j["lambda_mixed_hol"])
                                           : std::vector<ComplexStructureEntry>{};
  auto ma = j.contains("lambda_mixed_anti") ? parse_entry_list(j["lambda_mixed_anti"])
                                            : std::vector<ComplexStructureEntry>{};
  for (const auto& e : hol)
    if (e.j >= e.k)
      throw InputError("lambda_hol entries must list j < k only (antisymmetry fills the rest)");
  return ComplexifiedAlgebra::from_blocks(n, hol, mh, ma);
}

std::string complexified_to_json(const ComplexifiedAlgebra& alg) {
  const int n = alg.n();
  JsonOut out;
  out.obj_open();
  out.key("n").value(n);
  out.key("lambda_hol").arr_open();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (std::abs(alg.lam_hol(i, j, k)) > 0.0) {
          out.obj_open();
          out.key("i").value(i + 1);
          out.key("j").value(j + 1);
          out.key("k").value(k + 1);
          out.key("re").value(alg.lam_hol(i, j, k).real());
          out.key("im").value(alg.lam_hol(i, j, k).imag());
          out.obj_close();
        }
  out.arr_close();
  auto dump_mixed = [&](const char* name, bool anti) {
    out.key(name).arr_open();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const Complex v = anti ? alg.lam_mixed_anti(i, j, k) : alg.lam_mixed_hol(i, j, k);
          if (std::abs(v) > 0.0) {
            out.obj_open();
            out.key("i").value(i + 1);
            out.key("j").value(j + 1);
            out.key("k").value(k + 1);
            out.key("re").value(v.real());
            out.key("im").value(v.imag());
            out.obj_close();
          }
        }
    out.arr_close();
  };
  dump_mixed("lambda_mixed_hol", false);
  dump_mixed("lambda_mixed_anti", true);
  out.obj_close();
  return out.str();
}

AlgebraSource load_algebra(const std::string& spec) {
  if (is_builtin_spec(spec)) {
    const BuiltinSpec b = parse_builtin(spec);
    ComplexifiedAlgebra alg = [&] {
      if (b.name == "ch2")
        return builtin_ch2(param_double(b, "beta", 1.0), param_double(b, "gamma", 1.0));
      if (b.name == "abelian") return builtin_abelian(static_cast<int>(param_double(b, "n", 0, true)));
      if (b.name == "complex_heisenberg") return builtin_complex_heisenberg();
      throw InputError("unknown builtin algebra: " + b.name);
    }();
    return {std::move(alg), digest_hex(spec), spec};
  }
  const std::string text = read_file(spec);
  return {parse_complexified_json(text), digest_hex(text), spec};
}

NormSource load_norm(const std::string& spec, int expected_dim) {
  if (is_builtin_spec(spec)) {
    const BuiltinSpec b = parse_builtin(spec);
    const int n = static_cast<int>(param_double(b, "n", expected_dim, expected_dim < 0));
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    NormSpec norm = [&] {
      if (b.name == "hermitian") return NormSpec::hermitian(id);
      if (b.name == "perturbed_hermitian")
        return NormSpec::perturbed_hermitian(id, param_double(b, "epsilon", 0.1),
                                             static_cast<int>(param_double(b, "p", 2)));
      throw InputError("unknown builtin norm: " + b.name);
    }();
    return {std::move(norm), digest_hex(spec), spec};
  }
  const std::string text = read_file(spec);
  return {parse_norm_json(text), digest_hex(text), spec};
}

NormSpec parse_norm_json(const std::string& text) {
  const json j = json::parse(text);
  const std::string kind = j.at("kind").get<std::string>();
  const auto& hj = j.at("h");
  const int n = static_cast<int>(hj.size());
  Eigen::MatrixXcd H(n, n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(hj[r].size()) != n) throw InputError("norm matrix h must be square");
    for (int c = 0; c < n; ++c) H(r, c) = parse_complex_entry(hj[r][c]);
  }
  const double asym = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kTolStructural) {
    std::ostringstream os;
    os << "norm matrix h is not Hermitian: asymmetry " << asym << " exceeds 1e-12";
    throw InputError(os.str());
  }
  H = 0.5 * (H + H.adjoint().eval());
  if (kind == "hermitian") return NormSpec::hermitian(H);
  if (kind == "perturbed_hermitian")
    return NormSpec::perturbed_hermitian(H, j.at("epsilon").get<double>(), j.at("p").get<int>());
  throw InputError("unknown norm kind: " + kind);
}

std::string norm_to_json(const NormSpec& norm) {
  JsonOut out;
  out.obj_open();
  switch (norm.kind()) {
    case NormSpec::Kind::hermitian:
      out.key("kind").value("hermitian");
      break;
    case NormSpec::Kind::perturbed_hermitian:
      out.key("kind").value("perturbed_hermitian");
      break;
    case NormSpec::Kind::custom:
      throw InputError("custom norms have no JSON form");
  }
  out.key("h").arr_open();
  for (int r = 0; r < norm.dim(); ++r) {
    out.arr_open();
    for (int c = 0; c < norm.dim(); ++c) out.value(norm.h()(r, c));
    out.arr_close();
  }
  out.arr_close();
  if (norm.kind() == NormSpec::Kind::perturbed_hermitian) {
    out.key("epsilon").value(norm.epsilon());
    out.key("p").value(norm.p());
  }
  out.obj_close();
  return out.str();
}

AlgebraFileKind sniff_algebra_file(const std::string& path) {
  const json j = json::parse(read_file(path));
  if (j.contains("dim")) return AlgebraFileKind::real;
  if (j.contains("n")) return AlgebraFileKind::complexified;
  throw InputError("algebra file has neither 'dim' (real) nor 'n' (complexified)");
}

RealAlgebraFile load_real_algebra(const std::string& spec) {
  if (is_builtin_spec(spec)) {
    const BuiltinSpec b = parse_builtin(spec);
    if (b.name == "ch2_real") {
      auto data = builtin_ch2_real(param_double(b, "beta", 1.0), param_double(b, "gamma", 1.0));
      return {std::move(data.algebra), std::move(data.I), std::move(data.weights)};
    }
    throw InputError("unknown builtin real algebra: " + b.name);
  }
  const json j = json::parse(read_file(spec));
  const int dim = j.at("dim").get<int>();
  std::vector<RealStructureEntry> entries;
  if (j.contains("c"))
    for (const auto& e : j["c"])
      entries.push_back({e.at("k").get<int>(), e.at("i").get<int>(), e.at("j").get<int>(),
                         e.at("val").get<double>()});
  RealAlgebraFile out{RealLieAlgebra::from_entries(dim, entries), std::nullopt, {}};
  if (j.contains("weights"))
    for (const auto& w : j["weights"]) out.weights.push_back(w.get<double>());
  if (j.contains("I")) {
    const auto& ij = j["I"];
    if (static_cast<int>(ij.size()) != dim) throw InputError("I must be a dim x dim matrix");
    Eigen::MatrixXd I(dim, dim);
    for (int r = 0; r < dim; ++r) {
      if (static_cast<int>(ij[r].size()) != dim) throw InputError("I must be a dim x dim matrix");
      for (int c = 0; c < dim; ++c) I(r, c) = ij[r][c].get<double>();
    }
    out.I = I;
  }
  return out;
}

Eigen::VectorXcd parse_vector_arg(const std::string& text) {
  std::vector<Complex> vals;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const auto colon = tok.find(':');
    try {
      if (colon == std::string::npos) {
        vals.emplace_back(std::stod(tok), 0.0);
      } else {
        vals.emplace_back(std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1)));
      }
    } catch (const std::exception&) {
      throw InputError("malformed vector component: " + tok);
    }
  }
  if (vals.empty()) throw InputError("empty vector argument");
  Eigen::VectorXcd v(static_cast<int>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<int>(i)] = vals[i];
  return v;
}

}  // namespace finsler_lie
