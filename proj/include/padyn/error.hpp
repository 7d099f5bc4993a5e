#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padyn {

enum class ErrorKind {
  InvalidArgument,
  SpecMismatch,
  DivisionByZero,
  NegativeValuation,
  ZeroResidue,
  NotAUnit,
  NotASimpleRoot,
  SingularJacobian,
  ResidueNotASolution,
  NoConvergence,
  DegreeOverflow,
  NonIntegralCoefficient,
  DegenerateReduction,
  BudgetExceeded,
  NoGoodPrime,
  NotStabilized,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for all domain failures; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace padyn
