#pragma once

#include <stdexcept>
#include <string>

namespace clonecert {

// Base for all errors raised by the library. `code()` is a stable
// machine-readable tag; the CLI maps any Error to exit status 2.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define CLONECERT_DEFINE_ERROR(Name, Tag)                         \
    class Name : public Error {                                   \
    public:                                                       \
        explicit Name(const std::string& what) : Error(Tag, what) {} \
    }

CLONECERT_DEFINE_ERROR(ArityMismatch, "arity-mismatch");
CLONECERT_DEFINE_ERROR(UnboundSymbol, "unbound-symbol");
CLONECERT_DEFINE_ERROR(CapExceeded, "cap-exceeded");
CLONECERT_DEFINE_ERROR(EpsOutOfRange, "eps-out-of-range");
CLONECERT_DEFINE_ERROR(ProbabilityOverflow, "probability-overflow");
CLONECERT_DEFINE_ERROR(RetriesExhausted, "retries-exhausted");
CLONECERT_DEFINE_ERROR(PreconditionViolated, "precondition-violated");
CLONECERT_DEFINE_ERROR(InfeasibleHints, "infeasible-hints");
CLONECERT_DEFINE_ERROR(UnmaterializedLevel, "unmaterialized-level");
CLONECERT_DEFINE_ERROR(ProfileMismatch, "profile-mismatch");
CLONECERT_DEFINE_ERROR(DegenerateDenominator, "degenerate-denominator");
CLONECERT_DEFINE_ERROR(AssumptionViolated, "assumption-violated");
CLONECERT_DEFINE_ERROR(DepthTooLarge, "depth-too-large");
CLONECERT_DEFINE_ERROR(DepthExceeded, "depth-exceeded");
CLONECERT_DEFINE_ERROR(SearchExhausted, "search-exhausted");
CLONECERT_DEFINE_ERROR(NoUsableLevel, "no-usable-level");
CLONECERT_DEFINE_ERROR(NotApplicable, "not-applicable");
CLONECERT_DEFINE_ERROR(UsageError, "usage");

#undef CLONECERT_DEFINE_ERROR

} // namespace clonecert
