#pragma once

#include <string>
#include <utility>
#include <vector>

#include "koiso/model.hpp"

namespace koiso {

// Critical soliton parameters of the shrinking class:
//   E0: the positive root of eta(-1, E) = 0 (exponential term of phi dies;
//       complete noncompact metric on L),
//   E1: the root in (0, E0) of eta(1, E) - e^{2E} eta(-1, E) = 0
//       (phi(1) = 0; compactifiable to the projective bundle).
struct CriticalValues {
    double e0 = 0.0;
    double e1 = 0.0;
    std::pair<double, double> e0_bracket{0.0, 0.0};
    std::pair<double, double> e1_bracket{0.0, 0.0};
    double e0_residual = 0.0;  // |eta(-1, E0)|
    double e1_residual = 0.0;  // |eta(1, E1) - e^{2 E1} eta(-1, E1)|
    std::vector<std::string> diagnostics;
};

// eta(U, E): the polynomial with d/dx[-e^{-Ex} eta(x)] = x e^{-Ex} Q(x).
// Defined for any spec's Q; E must be nonzero (DegenerateExponent).
double eta_at(const BundleSpec& spec, double u, double e);

// The bisected objectives are the defining functions rescaled by E^{m+2},
// which removes the 1/E^{m+2} coefficient blowup and is what both sign
// scans and bisection actually see.
double e0_objective(const BundleSpec& spec, double e);
double e1_objective(const BundleSpec& spec, double e);

// Both throw NoSignChange when bracketing fails; find_e1 throws
// OrderingViolation if the result would contradict 0 < E1 < E0.
// Non-shrinking specs are rejected (criticals are a shrinking notion).
double find_e0(const BundleSpec& spec);
double find_e1(const BundleSpec& spec);
CriticalValues find_criticals(const BundleSpec& spec);

} // namespace koiso
