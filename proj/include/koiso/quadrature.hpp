#pragma once

#include <functional>

namespace koiso::detail {

struct QuadResult {
    double value;
    double error;   // Gauss/Kronrod discrepancy estimate
};

// Single Gauss7/Kronrod15 panel on [a, b]. No adaptivity, no error control
// beyond the returned estimate; the integrand must be finite on the panel.
QuadResult gk15_panel(const std::function<double(double)>& f, double a, double b);

// Adaptive bisection of panels until every panel's error estimate fits its
// share of the budget max(abs_tol, rel_tol * |I|). Throws QuadratureFailure
// on NaN integrand values or when the panel stack exceeds its depth budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol = 1e-300);

} // namespace koiso::detail
