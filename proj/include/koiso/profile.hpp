#pragma once

#include <optional>

#include "koiso/model.hpp"
#include "koiso/poly.hpp"

namespace koiso {

enum class SourceKind { ShrinkingSource, ExpandingSource, SteadySource };

// The per-class inhomogeneity of the reduced soliton ODE
//   phi' = E*phi - phi*Q'/Q + s(U):
// s(U) = -2U (shrinking), +2U (expanding), +2 (steady).
Polynomial source_polynomial(SolitonClass c);

// Closed-form momentum profile phi(U) = u(t)^2 of a cohomogeneity-one
// soliton metric on the line bundle described by spec. Representation:
//
//   phi(U) = N(U) / Q(U),   N(U) = -sigma(U) + e^{E (U - Umin)} sigma(Umin)
//
// where sigma solves E*sigma - sigma' = s*Q (for E = 0, sigma is minus the
// plain antiderivative of s*Q and the exponential factor is identically 1).
// Everything downstream (W, W', Ricci) differentiates N analytically.
struct SolitonProfile {
    BundleSpec spec;
    double e = 0.0;             // soliton parameter, V = -(E/2) H
    double umin = 0.0;
    SourceKind source_kind = SourceKind::SteadySource;
    Polynomial q;               // prod (1 - U lambda_i)
    Polynomial q_prime;
    Polynomial sigma;
    Polynomial sigma_prime;
    Polynomial sigma_second;
    // sigma(Umin + d) as a polynomial in d. N is evaluated through it as
    //   N = sigma(Umin) expm1(E d) - sum_{k>=1} a_k d^k,
    // every term O(d): no cancellation next to the zero of phi at Umin,
    // where the direct Horner form loses all significant digits.
    Polynomial sigma_shifted;
    double sigma_at_umin = 0.0; // snapped to 0 when it is pure roundoff
    bool exp_term_active = false;
    double recurrence_residual = 0.0;  // backward-relative, ~machine eps
    bool low_e_warning = false;        // |E| < 0.1: sigma is ill-conditioned
};

// Umin is fixed by the class for shrinking (-1) and expanding (+1); passing
// it explicitly is allowed only with the required value. Steady requires
// umin > -1. Throws InvalidUmin otherwise.
SolitonProfile build_profile(const BundleSpec& spec, double e,
                             std::optional<double> umin = std::nullopt);

// Numerator N(U) and derivatives. Evaluation refuses U with
// E*(U - Umin) > 700 while the exponential term is live (RangeOverflow).
double numerator(const SolitonProfile& p, double u);
double numerator_prime(const SolitonProfile& p, double u);
double numerator_second(const SolitonProfile& p, double u);

double phi(const SolitonProfile& p, double u);        // exactly 0 at Umin
double phi_prime(const SolitonProfile& p, double u);  // == 2 at Umin
double source_value(const SolitonProfile& p, double u);

// W = phi' + phi Q'/Q = N'/Q; the fiber log-derivative u d/dt log(u^2 p).
double w_value(const SolitonProfile& p, double u);
double w_prime(const SolitonProfile& p, double u);

// phi'_closed-form + phi Q'/Q - s(U) - E phi, i.e. how far the stored
// closed form is from solving the reduced soliton ODE. Machine-epsilon
// scale certifies the profile. Requires U strictly above Umin.
double ode_residual(const SolitonProfile& p, double u);

} // namespace koiso
