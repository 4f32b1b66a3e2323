#include "koiso/rootfind.hpp"

#include <cmath>

#include "koiso/errors.hpp"

namespace koiso::detail {

std::vector<Bracket> scan_sign_changes(const std::function<double(double)>& f,
                                       double lo, double hi, int n) {
    std::vector<Bracket> out;
    if (n < 2) return out;
    double x_prev = lo;
    double f_prev = f(lo);
    for (int i = 1; i < n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(n - 1);
        const double fx = f(x);
        if ((f_prev < 0.0 && fx > 0.0) || (f_prev > 0.0 && fx < 0.0) ||
            (f_prev == 0.0 && fx != 0.0) || (f_prev != 0.0 && fx == 0.0)) {
            out.emplace_back(x_prev, x);
        }
        x_prev = x;
        f_prev = fx;
    }
    return out;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw NoSignChange("bisect: endpoints do not bracket a sign change");
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::abs(hi - lo) <= xtol * std::max(1.0, std::abs(mid))) return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace koiso::detail
