#include "koiso/profile.hpp"

#include <cmath>
#include <cstdio>

#include "koiso/errors.hpp"

namespace koiso {
namespace {

constexpr double kExpArgMax = 700.0;
constexpr double kSigmaSnapRel = 1e-11;

void require_at_or_above_umin(const SolitonProfile& p, double u) {
    if (u < p.umin) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "U = %.17g below Umin = %.17g", u, p.umin);
        throw BelowUmin(buf);
    }
}

double checked_exp_arg(const SolitonProfile& p, double u) {
    const double arg = p.e * (u - p.umin);
    if (p.exp_term_active && arg > kExpArgMax) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "E*(U-Umin) = %.6g exceeds %.0f; exp term would overflow",
                      arg, kExpArgMax);
        throw RangeOverflow(buf);
    }
    return arg;
}

double exp_factor(const SolitonProfile& p, double u) {
    return std::exp(checked_exp_arg(p, u));
}

} // namespace

Polynomial source_polynomial(SolitonClass c) {
    switch (c) {
        case SolitonClass::Shrinking:
            return Polynomial(std::vector<double>{0.0, -2.0});
        case SolitonClass::Expanding:
            return Polynomial(std::vector<double>{0.0, 2.0});
        case SolitonClass::Steady:
            return Polynomial(std::vector<double>{2.0});
    }
    return Polynomial{};
}

SolitonProfile build_profile(const BundleSpec& spec, double e,
                             std::optional<double> umin) {
    const ValidationResult checked = validate_spec(spec);
    if (!checked.ok())
        throw Error("build_profile: spec failed validation: " +
                    checked.violations.front().message);

    SolitonProfile p;
    p.spec = spec;
    p.e = e;

    switch (spec.soliton_class) {
        case SolitonClass::Shrinking:
            p.source_kind = SourceKind::ShrinkingSource;
            if (umin && *umin != -1.0)
                throw InvalidUmin("shrinking class fixes Umin = -1");
            p.umin = -1.0;
            break;
        case SolitonClass::Expanding:
            p.source_kind = SourceKind::ExpandingSource;
            if (umin && *umin != 1.0)
                throw InvalidUmin("expanding class fixes Umin = 1");
            p.umin = 1.0;
            break;
        case SolitonClass::Steady:
            p.source_kind = SourceKind::SteadySource;
            if (!umin)
                throw InvalidUmin("steady class requires an explicit Umin > -1");
            if (!(*umin > -1.0))
                throw InvalidUmin("steady class requires Umin > -1");
            p.umin = *umin;
            break;
    }

    p.q = q_from_eigenvalues(spec.lambdas);
    p.q_prime = p.q.derivative();

    const Polynomial s = source_polynomial(spec.soliton_class);
    const Polynomial sq = s * p.q;
    if (e != 0.0) {
        p.sigma = exp_weighted_antiderivative(sq, e);
        p.recurrence_residual = exp_antiderivative_residual(sq, e, p.sigma);
        p.low_e_warning = std::abs(e) < 0.1;
    } else {
        p.sigma = -sq.antiderivative();
    }
    p.sigma_prime = p.sigma.derivative();
    p.sigma_second = p.sigma_prime.derivative();
    p.sigma_shifted = taylor_shift(p.sigma, p.umin);

    // sigma(Umin) is the coefficient of the e^{E(U-Umin)} term. When it is
    // roundoff (E located at a root of it, e.g. E = E0), keep the profile
    // purely rational: a stray 1e-13 coefficient times e^{700} would
    // otherwise invent asymptotics that are not there.
    const double raw = p.sigma_shifted[0];
    const double scale = 1.0 + p.sigma.eval_magnitude(p.umin);
    p.sigma_at_umin = (std::abs(raw) <= kSigmaSnapRel * scale) ? 0.0 : raw;
    p.exp_term_active = p.sigma_at_umin != 0.0;
    return p;
}

// sum_{k>=1} a_k d^k of the shifted sigma; the constant a_0 is carried by
// the expm1 term instead (or dropped entirely when it was snapped).
static double shifted_tail(const Polynomial& shifted, double d) {
    const auto cs = shifted.coeffs();
    double acc = 0.0;
    for (std::size_t i = cs.size(); i-- > 1;) acc = acc * d + cs[i];
    return acc * d;
}

double numerator(const SolitonProfile& p, double u) {
    const double d = u - p.umin;
    const double tail = shifted_tail(p.sigma_shifted, d);
    if (!p.exp_term_active) return -tail;
    return p.sigma_at_umin * std::expm1(checked_exp_arg(p, u)) - tail;
}

double numerator_prime(const SolitonProfile& p, double u) {
    double n = -p.sigma_prime.eval(u);
    if (p.exp_term_active) n += p.e * exp_factor(p, u) * p.sigma_at_umin;
    return n;
}

double numerator_second(const SolitonProfile& p, double u) {
    double n = -p.sigma_second.eval(u);
    if (p.exp_term_active) n += p.e * p.e * exp_factor(p, u) * p.sigma_at_umin;
    return n;
}

double phi(const SolitonProfile& p, double u) {
    require_at_or_above_umin(p, u);
    if (u == p.umin) return 0.0;
    return numerator(p, u) / p.q.eval(u);
}

double phi_prime(const SolitonProfile& p, double u) {
    require_at_or_above_umin(p, u);
    const double q = p.q.eval(u);
    return (numerator_prime(p, u) - phi(p, u) * p.q_prime.eval(u)) / q;
}

double source_value(const SolitonProfile& p, double u) {
    return source_polynomial(p.spec.soliton_class).eval(u);
}

double w_value(const SolitonProfile& p, double u) {
    require_at_or_above_umin(p, u);
    return numerator_prime(p, u) / p.q.eval(u);
}

double w_prime(const SolitonProfile& p, double u) {
    require_at_or_above_umin(p, u);
    const double q = p.q.eval(u);
    const double w = numerator_prime(p, u) / q;
    return (numerator_second(p, u) - w * p.q_prime.eval(u)) / q;
}

double ode_residual(const SolitonProfile& p, double u) {
    if (u <= p.umin)
        throw BelowUmin("ode_residual requires U strictly above Umin");
    const double ph = phi(p, u);
    const double qq = p.q.eval(u);
    return phi_prime(p, u) + ph * p.q_prime.eval(u) / qq - source_value(p, u) -
           p.e * ph;
}

} // namespace koiso
