#pragma once

#include <stdexcept>
#include <string>

namespace cpbs {

// Base for every domain error raised by the library. The CLI maps these to
// exit code 1.
class CpbsError : public std::runtime_error {
 public:
  explicit CpbsError(const std::string& what) : std::runtime_error(what) {}
};

#define CPBS_DECLARE_ERROR(Name)                                  \
  class Name : public CpbsError {                                 \
   public:                                                        \
    explicit Name(const std::string& what) : CpbsError(what) {}   \
  };

CPBS_DECLARE_ERROR(TypeError)
CPBS_DECLARE_ERROR(SyntaxError)
CPBS_DECLARE_ERROR(NonTermination)
CPBS_DECLARE_ERROR(InvalidConfiguration)
CPBS_DECLARE_ERROR(MissingAssignment)
CPBS_DECLARE_ERROR(StaleInstance)
CPBS_DECLARE_ERROR(DerivationFailed)
CPBS_DECLARE_ERROR(NotBijective)
CPBS_DECLARE_ERROR(TypeMismatch)
CPBS_DECLARE_ERROR(GuardViolation)
CPBS_DECLARE_ERROR(HasGates)
CPBS_DECLARE_ERROR(NotQueryOptimal)
CPBS_DECLARE_ERROR(PreconditionViolated)
CPBS_DECLARE_ERROR(NotFound)
CPBS_DECLARE_ERROR(NotEulerian)
CPBS_DECLARE_ERROR(LengthMismatch)
CPBS_DECLARE_ERROR(BudgetExceeded)
CPBS_DECLARE_ERROR(InvalidDecomposition)

#undef CPBS_DECLARE_ERROR

// Raised when an internal consistency check fails; indicates a bug rather than
// bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace cpbs
