#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finsler_lie/algebra.hpp"
#include "finsler_lie/norm.hpp"

namespace finsler_lie {

/// Deterministic JSON emitter: insertion-ordered keys, doubles printed with
/// 17 significant digits so payloads round-trip losslessly and dumps are
/// byte-stable for fixed inputs.
class JsonOut {
public:
  JsonOut& obj_open();
  JsonOut& obj_close();
  JsonOut& arr_open();
  JsonOut& arr_close();
  JsonOut& key(const std::string& k);
  JsonOut& value(double v);
  JsonOut& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonOut& value(std::int64_t v);
  JsonOut& value(std::uint64_t v);
  JsonOut& value(bool v);
  JsonOut& value(const std::string& v);
  JsonOut& value(const char* v) { return value(std::string(v)); }
  JsonOut& value(const Complex& z);  // {"re":..., "im":...}
  JsonOut& raw(const std::string& json_text);
  JsonOut& kv(const std::string& k, double v) { return key(k).value(v); }
  template <class T>
  JsonOut& kv(const std::string& k, const T& v) { return key(k).value(v); }
  std::string str() const { return out_; }

private:
  void comma();
  std::string out_;
  std::vector<bool> first_;  // per open container
  bool pending_key_ = false;
};

std::string format_double(double v);

/// FNV-1a 64-bit content digest, hex encoded.
std::string digest_hex(const std::string& bytes);

struct AlgebraSource {
  ComplexifiedAlgebra algebra;
  std::string digest;
  std::string description;  // canonical builtin spec or file path
};

/// Accepts a JSON file path or a builtin pseudo-path such as
/// "builtin:ch2?beta=1&gamma=1", "builtin:abelian?n=3",
/// "builtin:complex_heisenberg".
AlgebraSource load_algebra(const std::string& spec);

struct NormSource {
  NormSpec norm;
  std::string digest;
  std::string description;
};

/// JSON file path or "builtin:hermitian?n=2" (identity matrix),
/// "builtin:perturbed_hermitian?n=2&epsilon=0.1&p=2". When the builtin spec
/// omits n and expected_dim >= 0, expected_dim is used.
NormSource load_norm(const std::string& spec, int expected_dim = -1);

struct RealAlgebraFile {
  RealLieAlgebra algebra;
  std::optional<Eigen::MatrixXd> I;
  std::vector<double> weights;  // natural basis scalings; empty = default
};

/// Real-algebra JSON {"dim":.., "c":[{"k":..,"i":..,"j":..,"val":..},..],
/// "I":[[..]], "weights":[..]} (weights optional) or the builtin pseudo-path
/// "builtin:ch2_real?beta=1&gamma=1", which carries its own scalings.
RealAlgebraFile load_real_algebra(const std::string& spec);

/// Distinguishes the two algebra file schemas by their fields.
enum class AlgebraFileKind { complexified, real };
AlgebraFileKind sniff_algebra_file(const std::string& path);

bool is_builtin_spec(const std::string& spec);

ComplexifiedAlgebra parse_complexified_json(const std::string& text);
std::string complexified_to_json(const ComplexifiedAlgebra& alg);

NormSpec parse_norm_json(const std::string& text);
std::string norm_to_json(const NormSpec& norm);

std::string read_file(const std::string& path);

/// Comma-separated complex vector "1:0,0:2" (re:im pairs) with pure-real
/// shorthand "1,0".
Eigen::VectorXcd parse_vector_arg(const std::string& text);

}  // namespace finsler_lie
