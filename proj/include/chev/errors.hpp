#pragma once

#include <stdexcept>
#include <string>

namespace chev {

// Base of every error thrown by the library. `kind()` is the stable name used
// in reports and CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CHEV_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

// coxeter_core
CHEV_DEFINE_ERROR(ParseError);
CHEV_DEFINE_ERROR(UnsupportedRank);
CHEV_DEFINE_ERROR(UnsupportedFieldExact);
CHEV_DEFINE_ERROR(GroupTooLarge);
CHEV_DEFINE_ERROR(NotFiniteType);

// polyalg
CHEV_DEFINE_ERROR(FieldMismatch);
CHEV_DEFINE_ERROR(ArityMismatch);
CHEV_DEFINE_ERROR(ExponentOverflow);

// chevalley
CHEV_DEFINE_ERROR(UnsupportedFamily);
CHEV_DEFINE_ERROR(FactorizationFailure);
CHEV_DEFINE_ERROR(NotInvariant);
CHEV_DEFINE_ERROR(RewriteInconsistent);
CHEV_DEFINE_ERROR(DivisibilityFailure);

// strata
CHEV_DEFINE_ERROR(LatticeTooLarge);
CHEV_DEFINE_ERROR(ClassificationFailure);
CHEV_DEFINE_ERROR(FlatnessViolation);

// whitney
CHEV_DEFINE_ERROR(PointNotInField);
CHEV_DEFINE_ERROR(EmptyCompact);
CHEV_DEFINE_ERROR(NonpositiveBase);
CHEV_DEFINE_ERROR(UnsupportedGroupForProbe);
CHEV_DEFINE_ERROR(RayOnMirror);
CHEV_DEFINE_ERROR(InsufficientFlatness);
CHEV_DEFINE_ERROR(InvalidArgument);

#undef CHEV_DEFINE_ERROR

// Division failure keeps a rendering of the nonzero remainder; the typed
// remainder is carried by `NotDivisible<F>` in poly.hpp.
class NotDivisibleError : public Error {
 public:
  NotDivisibleError(const std::string& what, std::string remainder)
      : Error("NotDivisible", what + " (remainder " + remainder + ")"),
        remainder_text_(std::move(remainder)) {}

  const std::string& remainder_text() const noexcept { return remainder_text_; }

 private:
  std::string remainder_text_;
};

}  // namespace chev
