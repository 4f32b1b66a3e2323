#include "koiso/criticals.hpp"

#include <cmath>
#include <cstdio>

#include "koiso/errors.hpp"
#include "koiso/poly.hpp"
#include "koiso/rootfind.hpp"

namespace koiso {
namespace {

constexpr double kRootTol = 1e-13;

Polynomial u_times_q(const BundleSpec& spec) {
    return Polynomial(std::vector<double>{0.0, 1.0}) *
           q_from_eigenvalues(spec.lambdas);
}

void require_shrinking(const BundleSpec& spec, const char* who) {
    if (spec.soliton_class != SolitonClass::Shrinking)
        throw Error(std::string(who) + ": criticals are defined for the shrinking class only");
}

// eta's coefficients carry powers up to 1/E^{m+2}; multiplying the values
// by E^{m+2} keeps the objectives O(1) across the whole scan range.
double scale_power(const BundleSpec& spec, double e) {
    return std::pow(e, spec.base_dim + 2);
}

struct Objectives {
    double p0;  // E^{m+2} * eta(-1, E)
    double p1;  // E^{m+2} * eta(+1, E)
};

Objectives scaled_eta_pair(const BundleSpec& spec, double e) {
    const Polynomial eta = exp_weighted_antiderivative(u_times_q(spec), e);
    const double s = scale_power(spec, e);
    return {s * eta.eval(-1.0), s * eta.eval(1.0)};
}

} // namespace

double eta_at(const BundleSpec& spec, double u, double e) {
    return exp_weighted_antiderivative(u_times_q(spec), e).eval(u);
}

double e0_objective(const BundleSpec& spec, double e) {
    return scaled_eta_pair(spec, e).p0;
}

double e1_objective(const BundleSpec& spec, double e) {
    const Objectives v = scaled_eta_pair(spec, e);
    return v.p1 - std::exp(2.0 * e) * v.p0;
}

double find_e0(const BundleSpec& spec) {
    require_shrinking(spec, "find_e0");
    const auto f = [&](double e) { return e0_objective(spec, e); };
    for (int k = 1; k <= 50; ++k) {
        const double lo = std::ldexp(1.0, -k);
        const double hi = std::ldexp(1.0, k);
        const double flo = f(lo);
        const double fhi = f(hi);
        if (flo == 0.0) return lo;
        if (fhi == 0.0) return hi;
        if ((flo < 0.0) != (fhi < 0.0))
            return detail::bisect(f, lo, hi, kRootTol);
    }
    throw NoSignChange("find_e0: eta(-1, E) never changes sign on (2^-50, 2^50)");
}

double find_e1(const BundleSpec& spec) {
    return find_criticals(spec).e1;
}

CriticalValues find_criticals(const BundleSpec& spec) {
    require_shrinking(spec, "find_criticals");
    CriticalValues out;

    const auto f0 = [&](double e) { return e0_objective(spec, e); };
    out.e0 = find_e0(spec);

    // Uniqueness of E0 on a generous bracket, surfaced as a diagnostic.
    {
        const double lo = std::max(1e-4 * out.e0, 1e-8);
        const double hi = 4.0 * out.e0;
        const auto brackets = detail::scan_sign_changes(f0, lo, hi, 10000);
        if (brackets.size() != 1) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "eta(-1, E) sign scan on (%.3g, %.3g) found %zu "
                          "sign changes (expected 1)",
                          lo, hi, brackets.size());
            out.diagnostics.emplace_back(buf);
        }
        if (!brackets.empty())
            out.e0_bracket = brackets.front();
        else
            out.e0_bracket = {out.e0, out.e0};
    }

    // Negative-E sign changes are reported, never treated as E0.
    {
        const auto neg = detail::scan_sign_changes(f0, -8.0, -1e-3, 512);
        if (!neg.empty()) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "eta(-1, E) also changes sign at negative E near %.6g; "
                          "ignored (E0 is the positive root)",
                          0.5 * (neg.front().first + neg.front().second));
            out.diagnostics.emplace_back(buf);
        }
    }

    const auto g = [&](double e) { return e1_objective(spec, e); };
    const double lo = std::max(1e-4 * out.e0, 1e-6);
    const double hi = out.e0 * (1.0 - 1e-9);
    auto brackets = detail::scan_sign_changes(g, lo, hi, 20000);
    if (brackets.empty())
        throw NoSignChange(
            "find_e1: eta(1,E) - e^{2E} eta(-1,E) has no sign change in (0, E0)");
    if (brackets.size() > 1) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "E1 scan found %zu sign changes in (0, E0); the objective "
                      "is roundoff-noisy near E = 0, using the rightmost bracket",
                      brackets.size());
        out.diagnostics.emplace_back(buf);
    }
    out.e1_bracket = brackets.back();
    out.e1 = detail::bisect(g, out.e1_bracket.first, out.e1_bracket.second, kRootTol);

    if (!(0.0 < out.e1 && out.e1 < out.e0)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "computed E1 = %.17g, E0 = %.17g violate 0 < E1 < E0",
                      out.e1, out.e0);
        throw OrderingViolation(buf);
    }

    out.e0_residual = std::abs(eta_at(spec, -1.0, out.e0));
    out.e1_residual = std::abs(eta_at(spec, 1.0, out.e1) -
                               std::exp(2.0 * out.e1) * eta_at(spec, -1.0, out.e1));
    return out;
}

} // namespace koiso
