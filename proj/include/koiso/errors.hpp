#pragma once

#include <stdexcept>
#include <string>

namespace koiso {

// Base for everything thrown by the library. Catching koiso::Error is enough
// to translate any numerical or structural failure into a diagnostic.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define KOISO_ERROR_KIND(Name)                                 \
    class Name : public Error {                                \
    public:                                                    \
        explicit Name(const std::string& what) : Error(what) {} \
    }

KOISO_ERROR_KIND(DegenerateExponent);   // exp-weighted antiderivative with E == 0
KOISO_ERROR_KIND(InvalidUmin);          // steady Umin outside (-1, inf)
KOISO_ERROR_KIND(BelowUmin);            // profile evaluated left of Umin
KOISO_ERROR_KIND(AtOrBelowUmin);        // geometry quantity needs U > Umin strictly
KOISO_ERROR_KIND(RangeOverflow);        // exp(E (U - Umin)) would overflow
KOISO_ERROR_KIND(NoSignChange);         // bracketing scan found no root
KOISO_ERROR_KIND(OrderingViolation);    // computed criticals violate 0 < E1 < E0
KOISO_ERROR_KIND(ClassificationConflict); // verdict disagrees with endpoint analysis
KOISO_ERROR_KIND(UndeterminedGrowth);   // numerator asymptotics inconsistent
KOISO_ERROR_KIND(PositivityViolation);  // phi <= 0 where a positive metric is required
KOISO_ERROR_KIND(QuadratureFailure);    // adaptive integrator hit depth/NaN limits
KOISO_ERROR_KIND(StepFailure);          // ODE marcher produced a non-finite state
KOISO_ERROR_KIND(GridTooClose);         // finite-difference stencil degenerate

#undef KOISO_ERROR_KIND

} // namespace koiso
