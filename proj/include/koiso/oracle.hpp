#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "koiso/geometry.hpp"
#include "koiso/model.hpp"
#include "koiso/profile.hpp"

namespace koiso {

// Independent brute-force cross-checks. None of these touch the sigma
// polynomial, the analytic W', or each other's code paths: a bug shared
// with the closed-form implementation is the failure mode defended against.

// phi via adaptive quadrature of the defining integral
//   int_{umin}^{U} e^{E (U - x)} s(x) Q(x) dx / Q(U),
// with Q evaluated as a direct product over eigenvalues.
double quad_phi_oracle(const BundleSpec& spec, double e, double umin, double u);

// phi via fixed-step RK4 on phi' = E phi - phi Q'/Q + s(U), started at
// Umin + 1e-8 with the simple-zero linearization phi = 2e-8.
double ode_phi_oracle(const SolitonProfile& p, double u);

// Ricci eigenvalues from central differences of log(u^2 p) on a local
// 5-point t-grid (arclength inverted by marching dU/dt = sqrt(phi)),
// Richardson-extrapolated h^2 -> h^4. h_t must lie in [1e-5, 1e-2];
// the point must be at least 3 h_t of arclength away from Umin.
Eigenvalues fd_ricci_oracle(const SolitonProfile& p, double u, double h_t = 1e-3);
Eigenvalues fd_ricci_oracle(const SolitonProfile& p, double u, double h_t,
                            double eps);

// All sign-change brackets of fn on an n-point uniform grid over [lo, hi].
std::vector<std::pair<double, double>> root_scan_oracle(
    const std::function<double(double)>& fn, double lo, double hi, int n);

} // namespace koiso
