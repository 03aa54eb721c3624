#ifndef REALDYN_ERRORS_HPP
#define REALDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace realdyn {

// Base class; `kind` survives type erasure so the CLI can map errors to exit codes.
struct Error : std::runtime_error {
  enum class Kind { Input, Budget, Precondition, Internal };
  Kind kind;
  Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

#define REALDYN_ERROR(Name, K)                                           \
  struct Name : Error {                                                  \
    explicit Name(const std::string& msg = #Name)                        \
        : Error(Error::Kind::K, std::string(#Name) + ": " + msg) {}      \
  }

// realmap_core
REALDYN_ERROR(ZeroDenominator, Input);
REALDYN_ERROR(DegeneratesToConstant, Input);
REALDYN_ERROR(IndeterminateForm, Internal);
REALDYN_ERROR(SingularMobius, Input);
// circle_degree
REALDYN_ERROR(DegenerateMap, Input);
REALDYN_ERROR(ParityViolation, Internal);
// entropy_estimators
REALDYN_ERROR(DepthBudgetExceeded, Budget);
REALDYN_ERROR(NotACircleHomeo, Precondition);
// kneading
REALDYN_ERROR(NotEventuallyAttracted, Precondition);
REALDYN_ERROR(InconsistentMinors, Internal);
REALDYN_ERROR(UnsupportedSurjectiveNonCover, Precondition);
// blaschke
REALDYN_ERROR(NotRealizable, Input);
REALDYN_ERROR(UnsupportedConfiguration, Input);
REALDYN_ERROR(ConditionFails, Precondition);
REALDYN_ERROR(DegreeConstraintViolated, Input);
REALDYN_ERROR(RealCriticalPointPresent, Precondition);
REALDYN_ERROR(CommutationFails, Precondition);
REALDYN_ERROR(EliminationDegenerate, Internal);
// families
REALDYN_ERROR(ParameterOutOfRange, Input);
REALDYN_ERROR(SignPatternViolated, Input);
REALDYN_ERROR(MultiplierTooSmall, Input);
// julia_real
REALDYN_ERROR(NoRealRepeller, Precondition);
REALDYN_ERROR(PreconditionFailed, Precondition);
// cli / parser
REALDYN_ERROR(NonPolynomialExponent, Input);
REALDYN_ERROR(DegreeZero, Input);

#undef REALDYN_ERROR

// Parse error with a byte offset into the source text.
struct SyntaxError : Error {
  std::size_t offset;
  SyntaxError(std::size_t off, const std::string& msg)
      : Error(Error::Kind::Input,
              "SyntaxError at byte " + std::to_string(off) + ": " + msg),
        offset(off) {}
};

}  // namespace realdyn

#endif
