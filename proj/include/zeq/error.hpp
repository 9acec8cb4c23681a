#ifndef ZEQ_ERROR_HPP
#define ZEQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace zeq {

enum class errc {
  zero_denominator,
  division_by_zero,
  not_invertible,
  not_monic,
  not_squarefree,
  pole_at_point,
  discriminant_vanishes,
  path_uncertifiable,
  oracle_failure,
  precision_failure,
  depth_exceeded,
  search_exhausted,
  guard_exceeded,
  parse_error,
  validation_error,
  internal_contradiction,
  degree_zero_input,
  all_zero_input,
  relation_not_satisfied,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::zero_denominator: return "ZeroDenominator";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::not_invertible: return "NotInvertible";
    case errc::not_monic: return "NotMonic";
    case errc::not_squarefree: return "NotSquarefree";
    case errc::pole_at_point: return "PoleAtPoint";
    case errc::discriminant_vanishes: return "DiscriminantVanishes";
    case errc::path_uncertifiable: return "PathUncertifiable";
    case errc::oracle_failure: return "OracleFailure";
    case errc::precision_failure: return "PrecisionFailure";
    case errc::depth_exceeded: return "DepthExceeded";
    case errc::search_exhausted: return "SearchExhausted";
    case errc::guard_exceeded: return "GuardExceeded";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
    case errc::internal_contradiction: return "InternalContradiction";
    case errc::degree_zero_input: return "DegreeZeroInput";
    case errc::all_zero_input: return "AllZeroInput";
    case errc::relation_not_satisfied: return "RelationNotSatisfiedByInput";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace zeq

#endif
