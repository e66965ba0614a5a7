#pragma once

#include <stdexcept>
#include <string>

namespace finsler_lie {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input data (shape mismatch, non-finite entries, bad file).
class InputError : public Error {
public:
  using Error::Error;
};

/// A builtin or norm parameter is out of its admissible range.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// The almost complex structure is not integrable (nonzero Nijenhuis tensor).
class IntegrabilityError : public Error {
public:
  IntegrabilityError(const std::string& what, int basis_i, int basis_j, double max_entry)
      : Error(what), basis_i(basis_i), basis_j(basis_j), max_entry(max_entry) {}
  int basis_i, basis_j;  // 1-based basis pair with the largest violation
  double max_entry;
};

/// [g^{1,0}, g^{1,0}] failed to close inside g^{1,0}; indicates a basis-selection bug.
class ClosureError : public Error {
public:
  using Error::Error;
};

/// The Levi matrix g is (numerically) singular at the requested direction.
class StronglyPseudoconvexViolation : public Error {
public:
  StronglyPseudoconvexViolation(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue(min_eigenvalue) {}
  double min_eigenvalue;
};

/// A finite-difference evaluation failed, e.g. a stencil point fell outside
/// the strongly pseudoconvex region.
class NumericalDerivativeError : public Error {
public:
  using Error::Error;
};

/// An operation was called outside its stated precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

}  // namespace finsler_lie
