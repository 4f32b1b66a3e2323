#pragma once

#include <optional>
#include <string>
#include <vector>

#include "koiso/model.hpp"
#include "koiso/profile.hpp"

namespace koiso {

enum class EndpointLocation { AtUmin, AtFiniteUmax, AtInfinity };

// Analytic behavior of phi at one end of the U-range. Divergence of
// int dU/phi (the r integral) and int dU/sqrt(phi) (the t integral) is
// decided from zero orders and growth degrees, never from quadrature.
struct EndpointBehavior {
    EndpointLocation location = EndpointLocation::AtUmin;
    // Order of the zero at a finite endpoint, or the polynomial growth
    // degree d (phi ~ c U^d) at infinity. -1 when exponential_growth.
    int phi_order = 0;
    bool exponential_growth = false;  // e^{EU}, E > 0 dominates
    bool r_integral_diverges = false;
    bool t_integral_diverges = false;
    bool t_integral_converges_at_umin = true;  // simple zero at Umin
};

enum class CompletenessCase {
    CompleteNoncompact,
    IllDefined,
    CompactProjective,
    IncompleteAtInfinity,
};

std::string_view to_string(CompletenessCase c);

struct CompletenessReport {
    BundleSpec spec;
    double e = 0.0;
    double umin = 0.0;
    CompletenessCase verdict = CompletenessCase::IllDefined;
    double umax = 0.0;  // +infinity allowed
    EndpointBehavior umin_behavior;
    EndpointBehavior umax_behavior;
    bool gt_positive = false;  // 1 - U lambda_i > 0 across the range
    std::optional<double> e0, e1;  // shrinking only
    std::vector<std::string> diagnostics;
};

// First zero of phi strictly beyond Umin (bisection-refined to ~1e-12), or
// +infinity when the numerator's asymptotics stay positive. Throws
// RangeOverflow if a crossing provably hides beyond the exp guard, and
// UndeterminedGrowth on inconsistent asymptotics.
double umax_of(const SolitonProfile& p);

// location = AtFiniteUmax needs the zero; the overload without it calls
// umax_of internally. Throws UndeterminedGrowth at infinity when the
// exponential term dominates (E > 0): no polynomial degree exists there.
EndpointBehavior endpoint_analysis(const SolitonProfile& p,
                                   EndpointLocation location);
EndpointBehavior endpoint_analysis(const SolitonProfile& p,
                                   EndpointLocation location, double umax);

// Case decision for (spec, E) by parameter value, cross-checked against the
// endpoint analysis of the constructed profile; a disagreement throws
// ClassificationConflict. decision_band is the |E - E0/E1| equality width.
CompletenessReport classify(const BundleSpec& spec, double e,
                            std::optional<double> umin = std::nullopt,
                            double decision_band = 1e-9);

} // namespace koiso
