#include "koiso/classify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "koiso/criticals.hpp"
#include "koiso/errors.hpp"
#include "koiso/rootfind.hpp"

namespace koiso {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double scan_upper_bound(const SolitonProfile& p) {
    if (p.exp_term_active && p.e > 0.0) return p.umin + 700.0 / p.e;
    // Polynomial part rules: past 10x the Cauchy root bound of sigma the
    // numerator cannot cross zero any more.
    double cauchy = 1.0;
    const auto cs = p.sigma.coeffs();
    if (!cs.empty()) {
        const double lead = std::abs(cs.back());
        double m = 0.0;
        for (std::size_t k = 0; k + 1 < cs.size(); ++k)
            m = std::max(m, std::abs(cs[k]));
        if (lead > 0.0) cauchy = 1.0 + m / lead;
    }
    return p.umin + std::min(2e4, std::max(1000.0, 10.0 * cauchy));
}

double numerator_sign_value(const SolitonProfile& p, double u) {
    // Same arithmetic as numerator(), so the refined zero's positive side
    // stays the positive side of phi downstream. Overflow of the exp term is
    // informative here: +-inf keeps its sign.
    const double d = u - p.umin;
    const auto cs = p.sigma_shifted.coeffs();
    double tail = 0.0;
    for (std::size_t i = cs.size(); i-- > 1;) tail = tail * d + cs[i];
    tail *= d;
    if (!p.exp_term_active) return -tail;
    const double arg = p.e * d;
    if (arg > 700.0) return kInf * p.sigma_at_umin - tail;
    return p.sigma_at_umin * std::expm1(arg) - tail;
}

} // namespace

std::string_view to_string(CompletenessCase c) {
    switch (c) {
        case CompletenessCase::CompleteNoncompact: return "CompleteNoncompact";
        case CompletenessCase::IllDefined: return "IllDefined";
        case CompletenessCase::CompactProjective: return "CompactProjective";
        case CompletenessCase::IncompleteAtInfinity: return "IncompleteAtInfinity";
    }
    return "?";
}

double umax_of(const SolitonProfile& p) {
    const double ub = scan_upper_bound(p);
    const auto f = [&](double u) { return numerator_sign_value(p, u); };

    // Bisection that keeps the phi > 0 side: the returned value never
    // overshoots the true zero, so phi(umax) >= 0 for downstream sampling.
    const auto refine = [&](double lo, double hi) {
        for (int it = 0;
             it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
            const double m = 0.5 * (lo + hi);
            (f(m) >= 0.0 ? lo : hi) = m;
        }
        return lo;
    };

    double step = std::max(1e-3, (ub - p.umin) * 1e-6);
    double u_prev = p.umin + step * 1e-6;
    if (f(u_prev) < 0.0) {
        // phi' = 2 at Umin makes the numerator positive immediately right of
        // Umin; a negative probe this close means the probe overshot a zero.
        return refine(p.umin, u_prev);
    }
    double u = u_prev;
    while (u < ub) {
        u = std::min(u + step, ub);
        const double fu = f(u);
        if (std::isnan(fu)) throw UndeterminedGrowth("numerator evaluated to NaN");
        if (fu < 0.0) return refine(u_prev, u);
        if (fu == 0.0) return u;
        u_prev = u;
        step *= 1.05;
    }

    if (p.exp_term_active && p.e > 0.0) {
        if (p.sigma_at_umin > 0.0) return kInf;
        throw RangeOverflow(
            "umax_of: no sign change before the exp overflow guard, but the "
            "exponential term is negative; the zero lies beyond E*(U-Umin)=700");
    }
    const auto cs = p.sigma.coeffs();
    const double lead = cs.empty() ? 0.0 : cs.back();
    if (-lead > 0.0) return kInf;
    throw UndeterminedGrowth(
        "umax_of: no zero found inside the scan range yet the polynomial "
        "asymptote is nonpositive");
}

EndpointBehavior endpoint_analysis(const SolitonProfile& p,
                                   EndpointLocation location) {
    if (location == EndpointLocation::AtFiniteUmax)
        return endpoint_analysis(p, location, umax_of(p));
    return endpoint_analysis(p, location, kInf);
}

EndpointBehavior endpoint_analysis(const SolitonProfile& p,
                                   EndpointLocation location, double umax) {
    EndpointBehavior b;
    b.location = location;
    switch (location) {
        case EndpointLocation::AtUmin: {
            // N'(Umin) = s(Umin) Q(Umin) = 2 Q(Umin) != 0: always simple.
            b.phi_order = 1;
            b.r_integral_diverges = true;   // log divergence; r -> 0
            b.t_integral_diverges = false;  // t ~ 2 sqrt(U - Umin)
            b.t_integral_converges_at_umin = true;
            return b;
        }
        case EndpointLocation::AtFiniteUmax: {
            const double np = numerator_prime(p, umax);
            const double scale = p.sigma_prime.eval_magnitude(umax) +
                                 (p.exp_term_active
                                      ? std::abs(p.e * p.sigma_at_umin) *
                                            std::exp(p.e * (umax - p.umin))
                                      : 0.0);
            b.phi_order = (std::abs(np) > 1e-8 * (1.0 + scale)) ? 1 : 2;
            b.r_integral_diverges = true;          // any zero order >= 1
            b.t_integral_diverges = b.phi_order >= 2;
            return b;
        }
        case EndpointLocation::AtInfinity: {
            if (p.exp_term_active && p.e > 0.0) {
                char buf[128];
                std::snprintf(buf, sizeof buf,
                              "exponential term dominates at infinity (sign of "
                              "E: +, E = %.6g); no polynomial growth degree",
                              p.e);
                throw UndeterminedGrowth(buf);
            }
            const auto cs = p.sigma.coeffs();
            const double lead = cs.empty() ? 0.0 : cs.back();
            if (!(-lead > 0.0))
                throw UndeterminedGrowth(
                    "numerator asymptote nonpositive at infinity; inconsistent "
                    "with an infinite U-range");
            const int d = p.sigma.degree() - p.q.degree();
            b.phi_order = d;
            b.r_integral_diverges = d <= 1;
            b.t_integral_diverges = d <= 2;
            return b;
        }
    }
    return b;
}

CompletenessReport classify(const BundleSpec& spec, double e,
                            std::optional<double> umin, double decision_band) {
    const ValidationResult checked = validate_spec(spec);
    if (!checked.ok())
        throw Error("classify: spec failed validation: " +
                    checked.violations.front().message);

    CompletenessReport rep;
    rep.spec = spec;
    rep.e = e;

    SolitonProfile p = build_profile(spec, e, umin);
    rep.umin = p.umin;

    // g_t = g_0 - U B positive: each 1 - U lambda_i must stay positive for
    // U >= Umin, i.e. the zero 1/lambda_i must lie strictly below Umin.
    rep.gt_positive = true;
    for (double lam : spec.lambdas) {
        const bool pos_at_umin = 1.0 - p.umin * lam > 0.0;
        const bool no_zero_above = lam == 0.0 || 1.0 / lam < p.umin;
        if (!(pos_at_umin && no_zero_above)) rep.gt_positive = false;
    }

    if (p.low_e_warning)
        rep.diagnostics.emplace_back(
            "|E| < 0.1: sigma coefficients are ill-conditioned; residual checks advised");

    // The case decision by parameter value.
    bool expect_finite_umax_not_one = false;
    if (spec.soliton_class == SolitonClass::Shrinking) {
        const CriticalValues crit = find_criticals(spec);
        rep.e0 = crit.e0;
        rep.e1 = crit.e1;
        for (const auto& d : crit.diagnostics) rep.diagnostics.push_back(d);
        if (std::abs(e - crit.e0) <= decision_band) {
            rep.verdict = CompletenessCase::CompleteNoncompact;
            if (e != crit.e0) {
                // Analyze the profile at the critical value itself so the
                // band's residual exponential term cannot skew asymptotics.
                p = build_profile(spec, crit.e0);
                rep.diagnostics.emplace_back(
                    "E within decision band of E0; endpoint analysis run at E0");
            }
        } else if (e > crit.e0) {
            rep.verdict = CompletenessCase::IllDefined;
        } else if (std::abs(e - crit.e1) <= decision_band) {
            rep.verdict = CompletenessCase::CompactProjective;
            if (e != crit.e1) {
                p = build_profile(spec, crit.e1);
                rep.diagnostics.emplace_back(
                    "E within decision band of E1; endpoint analysis run at E1");
            }
        } else {
            rep.verdict = CompletenessCase::IncompleteAtInfinity;
            expect_finite_umax_not_one = true;
            if (e <= 0.0)
                rep.diagnostics.emplace_back(
                    "outside the stated case diagram: shrinking E <= 0; "
                    "treated as the generic incomplete case");
        }
    } else {
        if (e < 0.0) {
            rep.verdict = CompletenessCase::CompleteNoncompact;
        } else if (e > 0.0) {
            rep.verdict = CompletenessCase::IllDefined;
        } else if (spec.soliton_class == SolitonClass::Steady) {
            rep.verdict = CompletenessCase::CompleteNoncompact;
            rep.diagnostics.emplace_back(
                "E = 0: Ricci-flat degenerate member (V = 0, Calabi-type)");
        } else {
            // Expanding E = 0 sits outside the stated case diagram; the
            // endpoint analysis decides below.
            rep.diagnostics.emplace_back(
                "outside the stated case diagram: expanding E = 0; "
                "verdict taken from endpoint analysis");
        }
    }

    rep.umin_behavior = endpoint_analysis(p, EndpointLocation::AtUmin);
    rep.umax = umax_of(p);
    if (std::isinf(rep.umax)) {
        try {
            rep.umax_behavior = endpoint_analysis(p, EndpointLocation::AtInfinity);
        } catch (const UndeterminedGrowth& ex) {
            rep.umax_behavior.location = EndpointLocation::AtInfinity;
            rep.umax_behavior.phi_order = -1;
            rep.umax_behavior.exponential_growth = true;
            rep.umax_behavior.r_integral_diverges = false;
            rep.umax_behavior.t_integral_diverges = false;
            rep.diagnostics.emplace_back(ex.what());
        }
    } else {
        rep.umax_behavior = endpoint_analysis(p, EndpointLocation::AtFiniteUmax, rep.umax);
    }

    // Expanding E = 0: verdict comes from the analysis itself.
    if (spec.soliton_class == SolitonClass::Expanding && e == 0.0) {
        if (std::isinf(rep.umax) && rep.umax_behavior.t_integral_diverges &&
            rep.umax_behavior.r_integral_diverges)
            rep.verdict = CompletenessCase::CompleteNoncompact;
        else if (std::isinf(rep.umax) && !rep.umax_behavior.r_integral_diverges)
            rep.verdict = CompletenessCase::IllDefined;  // r-range bounded: not all of L*
        else
            rep.verdict = CompletenessCase::IncompleteAtInfinity;
    }

    // Cross-check the parameter verdict against what the profile actually does.
    const auto conflict = [&](const char* why) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "verdict %s disagrees with endpoint analysis: %s",
                      std::string(to_string(rep.verdict)).c_str(), why);
        throw ClassificationConflict(buf);
    };
    switch (rep.verdict) {
        case CompletenessCase::CompleteNoncompact:
            if (!std::isinf(rep.umax)) conflict("finite Umax");
            if (!rep.umax_behavior.t_integral_diverges) conflict("t-integral converges at infinity");
            if (!rep.umax_behavior.r_integral_diverges) conflict("r-range bounded at infinity");
            if (!rep.umin_behavior.t_integral_converges_at_umin) conflict("t-integral diverges at Umin");
            break;
        case CompletenessCase::IllDefined:
            if (!std::isinf(rep.umax)) conflict("finite Umax");
            if (rep.umax_behavior.r_integral_diverges) conflict("r spans (0, inf)");
            break;
        case CompletenessCase::CompactProjective:
            if (std::isinf(rep.umax)) conflict("Umax is infinite");
            if (std::abs(rep.umax - 1.0) > 1e-9) conflict("Umax differs from 1");
            if (rep.umax_behavior.phi_order != 1) conflict("zero at Umax is not simple");
            break;
        case CompletenessCase::IncompleteAtInfinity:
            if (std::isinf(rep.umax)) conflict("Umax is infinite");
            if (rep.umax_behavior.t_integral_diverges) conflict("t-integral diverges at Umax");
            if (expect_finite_umax_not_one && std::abs(rep.umax - 1.0) <= decision_band)
                conflict("Umax = 1 outside the E1 band");
            break;
    }
    if (!rep.gt_positive && rep.verdict != CompletenessCase::IllDefined)
        conflict("g_t positivity fails");

    return rep;
}

} // namespace koiso
