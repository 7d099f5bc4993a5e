#include "padyn/error.hpp"

namespace padyn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NegativeValuation: return "NegativeValuation";
    case ErrorKind::ZeroResidue: return "ZeroResidue";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotASimpleRoot: return "NotASimpleRoot";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::ResidueNotASolution: return "ResidueNotASolution";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case ErrorKind::DegenerateReduction: return "DegenerateReduction";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NoGoodPrime: return "NoGoodPrime";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace padyn
