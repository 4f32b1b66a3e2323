#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace koiso::detail {

using Bracket = std::pair<double, double>;

// All sign-change subintervals of an n-point uniform grid on [lo, hi].
std::vector<Bracket> scan_sign_changes(const std::function<double(double)>& f,
                                       double lo, double hi, int n);

// Bisection on a bracket with f(lo), f(hi) of opposite sign (an endpoint
// with f == 0 is returned as-is). Shrinks until |hi - lo| <= xtol * max(1, |x|).
// Throws NoSignChange when the endpoints do not bracket.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol);

} // namespace koiso::detail
