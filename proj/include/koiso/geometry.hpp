#pragma once

#include <optional>
#include <vector>

#include "koiso/profile.hpp"

namespace koiso {

// Eigenvalues of an endomorphism split into the fiber direction and the m
// base directions (complex-trace convention: the real tensor carries each
// base value with multiplicity 2).
struct Eigenvalues {
    double fiber = 0.0;
    std::vector<double> base;
};

struct GeometrySample {
    double u = 0.0;
    double phi = 0.0;
    double t = 0.0;   // fiber arclength from the zero section
    double r = 0.0;   // bundle norm coordinate, r(U_ref) = 1
    double f = 0.0;   // soliton potential, E (U - Umin)
    double ric_fiber = 0.0;
    std::vector<double> ric_base;
    double scalar_c = 0.0;  // complex-trace scalar
    double identity_residual = 0.0;
    double ode_residual = 0.0;
};

struct GeometryTable {
    BundleSpec spec;
    double e = 0.0;
    double umin = 0.0;
    double identity_constant = 0.0;
    std::vector<GeometrySample> rows;
};

// Base Einstein sign entering the Ricci formulas: +1 for shrinking and
// steady; -1 for expanding (the convention under which the closed-form
// profile solves the base soliton equation; +1 is accepted as an override
// for experimentation).
double default_base_einstein_sign(SolitonClass c);

// t(U) = int_{Umin}^{U} dx / sqrt(phi). The sqrt-singularities at Umin and
// at a simple zero of phi at U are removed by the substitutions
// x = Umin + s^2 and x = U - s^2 on the two halves, then integrated on
// fixed Kronrod cells at two resolutions that must agree to 1e-9 (the
// last 1e-8 below U is done in closed form against a secant model of phi,
// which absorbs the stray positive phi(U) ~ 1e-13 left by a bisected zero).
double arclength_t(const SolitonProfile& p, double u);

// r(U) = exp(int_{U_ref}^{U} dx / phi); log-diverges at Umin (r -> 0) and
// at a zero of phi (r -> +inf). Exact U = Umin is rejected: AtOrBelowUmin.
double radius_r(const SolitonProfile& p, double u, double u_ref);

// Hamilton-normalized potential f = E (U - Umin); |grad f|^2 = E^2 phi.
double potential_f(const SolitonProfile& p, double u);

// fiber 2 phi, base 1 - U lambda_i; PositivityViolation past the U-range.
Eigenvalues metric_eigenvalues(const SolitonProfile& p, double u);

// Ricci endomorphism: fiber -W'/2, base (eps + W lambda/2)/(1 - U lambda).
Eigenvalues ricci_eigenvalues(const SolitonProfile& p, double u);
Eigenvalues ricci_eigenvalues(const SolitonProfile& p, double u, double eps);

double scalar_complex_trace(const SolitonProfile& p, double u);
double scalar_complex_trace(const SolitonProfile& p, double u, double eps);

// The conserved combination 2 S_c + E^2 phi + 2 rho E (U - Umin) minus its
// value in the U -> Umin limit (2 S_c(Umin); for steady canonical, -2E).
double identity_constant(const SolitonProfile& p);
double identity_constant(const SolitonProfile& p, double eps);
double soliton_identity_residual(const SolitonProfile& p, double u);
double soliton_identity_residual(const SolitonProfile& p, double u, double eps);

struct SampleOptions {
    int n_samples = 200;
    std::optional<double> u_cap;     // default min(Umax, Umin + 50)
    std::optional<double> base_einstein_sign;
    std::optional<double> u_ref;     // default Umin + 1 (clamped into range)
};

// Umin row plus n_samples rows uniform in arclength t. The last row sits at
// the cap; when the cap is a zero of phi its r entry is +infinity (limit).
GeometryTable sample_geometry(const SolitonProfile& p, const SampleOptions& opt = {});
GeometryTable sample_geometry(const SolitonProfile& p, int n_samples,
                              std::optional<double> u_cap);

} // namespace koiso
