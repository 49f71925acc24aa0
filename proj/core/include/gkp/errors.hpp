#pragma once

#include <stdexcept>
#include <string>

namespace gkp {

// Base class for all library errors. `kind()` is a stable machine-readable
// tag mirrored into CLI diagnostics.
class GkpError : public std::runtime_error {
  public:
    GkpError(std::string kind, const std::string &msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string &kind() const { return kind_; }

  private:
    std::string kind_;
};

#define GKP_DEFINE_ERROR(NAME)                                                \
    class NAME : public GkpError {                                            \
      public:                                                                 \
        explicit NAME(const std::string &msg) : GkpError(#NAME, msg) {}       \
    }

GKP_DEFINE_ERROR(NotSymplecticallyIntegral);
GKP_DEFINE_ERROR(Singular);
GKP_DEFINE_ERROR(NotSiegel);
GKP_DEFINE_ERROR(NumericalBreakdown);
GKP_DEFINE_ERROR(BudgetExceeded);
GKP_DEFINE_ERROR(TrivialCode);
GKP_DEFINE_ERROR(NotInDual);
GKP_DEFINE_ERROR(AutomorphyFailure);
GKP_DEFINE_ERROR(TruncationOverflow);
GKP_DEFINE_ERROR(GridTooCoarse);
GKP_DEFINE_ERROR(NotLogical);
GKP_DEFINE_ERROR(NotCommuting);
GKP_DEFINE_ERROR(NotPauli);
GKP_DEFINE_ERROR(InconsistentPhases);
GKP_DEFINE_ERROR(InputError);

#undef GKP_DEFINE_ERROR

} // namespace gkp
