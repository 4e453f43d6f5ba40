#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lqg {

enum class ErrorKind {
  // lattice construction
  NotAPoset,
  NotALattice,
  NoTopOrBottom,
  LatticeMismatch,
  UnknownElement,
  // algebra
  UnknownOperation,
  ArityMismatch,
  NotBinary,
  NotASubuniverse,
  NotACongruence,
  InvalidTable,
  // L-valued equality
  InvalidEquality,
  ConstantlyBottom,
  // solver / synthesis
  NoSolution,
  NotUnique,
  NotAnLQuasigroup,
  QEViolation,
  PreconditionFailed,
  NotApplicable,
  InternalDisagreement,
  InternalInvariant,
  // bundle parsing
  SyntaxError,
  UnknownName,
  DimensionMismatch,
  DuplicateName,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lqg
