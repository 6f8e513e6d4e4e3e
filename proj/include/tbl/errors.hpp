#pragma once

#include <stdexcept>
#include <string>

namespace tbl {

/// Base class for every failure raised by the library. `kind()` is the
/// stable machine-readable name used in CLI error reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TBL_DEFINE_ERROR(Name)                                          \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(#Name, what) {}      \
  };

TBL_DEFINE_ERROR(DivisionByZero)
TBL_DEFINE_ERROR(LogTermRequired)
TBL_DEFINE_ERROR(NonDecaying)
TBL_DEFINE_ERROR(NotZeroEigenfunction)
TBL_DEFINE_ERROR(DomainError)
TBL_DEFINE_ERROR(PoleError)
TBL_DEFINE_ERROR(NearDiagonal)
TBL_DEFINE_ERROR(NonConvergent)
TBL_DEFINE_ERROR(NoSolution)
TBL_DEFINE_ERROR(UnderDetermined)
TBL_DEFINE_ERROR(BoundaryUndetermined)
TBL_DEFINE_ERROR(IdentityFails)
TBL_DEFINE_ERROR(SingularBasis)
TBL_DEFINE_ERROR(OnlyTrivialSolution)
TBL_DEFINE_ERROR(InvalidArgument)
TBL_DEFINE_ERROR(InterpolationFailure)

#undef TBL_DEFINE_ERROR

}  // namespace tbl
