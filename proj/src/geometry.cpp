#include "koiso/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "koiso/classify.hpp"
#include "koiso/errors.hpp"
#include "koiso/quadrature.hpp"

namespace koiso {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sqrt_phi(const SolitonProfile& p, double x) {
    const double v = phi(p, x);
    if (v < 0.0)
        throw QuadratureFailure("phi negative inside an arclength integral");
    return std::sqrt(v);
}

// int over [x0, x1] of dx / sqrt(phi) after substituting x = origin + sgn s^2
// (sgn = +1 anchored below at Umin, -1 anchored above at a zero of phi),
// on n_cells fixed Kronrod cells uniform in s. Fixed cells rather than
// adaptive splitting: the integrand is analytic on every cell, while phi's
// evaluation right next to its zeros bottoms out in cancellation noise that
// an adaptive splitter would descend into and never converge on.
double t_half(const SolitonProfile& p, double origin, double sgn, double x0,
              double x1, int n_cells) {
    const double s_lo = std::sqrt(sgn * (x0 - origin));
    const double s_hi = std::sqrt(sgn * (x1 - origin));
    const auto f = [&](double s) {
        return 2.0 * s / sqrt_phi(p, origin + sgn * s * s);
    };
    double total = 0.0;
    for (int j = 0; j < n_cells; ++j) {
        const double a = s_lo + (s_hi - s_lo) * j / n_cells;
        const double b = s_lo + (s_hi - s_lo) * (j + 1) / n_cells;
        total += detail::gk15_panel(f, a, b).value;
    }
    return (sgn > 0) ? total : -total;
}

// int_a^b dx / sqrt(phi) for [a, b] inside [Umin, cap], with the square-root
// endpoint singularities removed: the lower half is parametrized by
// x = Umin + s^2 and the upper half by x = top - s^2 around a chosen top
// anchor (a zero of phi at the top then contributes smoothly as well).
// Two resolutions give an honest error check.
//
// The last 1e-8 below b is handled in closed form with phi modeled by the
// secant line of its endpoint values: int dx/sqrt(phi) = 2 dx/(sqrt+sqrt),
// exact for linear phi and stable for any slope. When b sits on a located
// zero of phi this matters: the zero is only bracketed to ~1e-13, so
// phi(b) is a stray positive ~1e-13 and the integrand acquires a feature
// at depth phi(b)/|phi'| that no fixed grid resolves. The model absorbs
// it; elsewhere the sliver is negligible either way.
double t_integral(const SolitonProfile& p, double a, double b, double top) {
    if (a == b) return 0.0;
    const double mid = 0.5 * (a + b);
    constexpr double kTopStep = 1e-8;
    const double x1 = std::max(mid, b - kTopStep);
    const double chunk =
        (b > x1) ? 2.0 * (b - x1) / (sqrt_phi(p, x1) + sqrt_phi(p, b)) : 0.0;
    const auto at = [&](int cells) {
        return t_half(p, p.umin, 1.0, a, mid, cells) +
               t_half(p, top, -1.0, mid, x1, cells);
    };
    const double coarse = at(192);
    const double fine = at(384);
    if (!(std::abs(fine - coarse) <= 1e-9 * (1.0 + std::abs(fine))))
        throw QuadratureFailure("arclength integral failed its resolution check");
    return fine + chunk;
}

double ricci_fiber_at(const SolitonProfile& p, double u) {
    return -0.5 * w_prime(p, u);
}

} // namespace

double default_base_einstein_sign(SolitonClass c) {
    return c == SolitonClass::Expanding ? -1.0 : 1.0;
}

double arclength_t(const SolitonProfile& p, double u) {
    if (u < p.umin) throw BelowUmin("arclength_t: U below Umin");
    if (u == p.umin) return 0.0;
    return t_integral(p, p.umin, u, u);
}

double radius_r(const SolitonProfile& p, double u, double u_ref) {
    if (u <= p.umin || u_ref <= p.umin)
        throw AtOrBelowUmin("radius_r: defined for U strictly above Umin");
    if (u == u_ref) return 1.0;
    const double a = std::min(u, u_ref);
    const double b = std::max(u, u_ref);
    // Substituting x = Umin + s^2 halves the strength of the near-Umin
    // integrable singularity of 1/phi; the adaptive splitter does the rest.
    const double s_lo = std::sqrt(a - p.umin);
    const double s_hi = std::sqrt(b - p.umin);
    const double integral = detail::integrate(
        [&](double s) {
            const double x = p.umin + s * s;
            const double v = phi(p, x);
            if (v <= 0.0)
                throw QuadratureFailure("phi nonpositive inside a radius integral");
            return 2.0 * s / v;
        },
        s_lo, s_hi, 1e-11);
    const double signed_integral = (u >= u_ref) ? integral : -integral;
    return std::exp(signed_integral);
}

double potential_f(const SolitonProfile& p, double u) {
    if (u < p.umin) throw BelowUmin("potential_f: U below Umin");
    return p.e * (u - p.umin) + 0.0;  // +0.0 folds -0 into 0 at the zero section
}

Eigenvalues metric_eigenvalues(const SolitonProfile& p, double u) {
    Eigenvalues ev;
    ev.fiber = 2.0 * phi(p, u);
    if (u > p.umin && ev.fiber <= 0.0)
        throw PositivityViolation("fiber metric nonpositive: U beyond the working range");
    ev.base.reserve(p.spec.lambdas.size());
    for (double lam : p.spec.lambdas) {
        const double g = 1.0 - u * lam;
        if (g <= 0.0)
            throw PositivityViolation("base metric eigenvalue nonpositive");
        ev.base.push_back(g);
    }
    return ev;
}

Eigenvalues ricci_eigenvalues(const SolitonProfile& p, double u) {
    return ricci_eigenvalues(p, u, default_base_einstein_sign(p.spec.soliton_class));
}

Eigenvalues ricci_eigenvalues(const SolitonProfile& p, double u, double eps) {
    if (u < p.umin) throw BelowUmin("ricci_eigenvalues: U below Umin");
    Eigenvalues ev;
    ev.fiber = ricci_fiber_at(p, u);
    const double w = w_value(p, u);
    ev.base.reserve(p.spec.lambdas.size());
    for (double lam : p.spec.lambdas)
        ev.base.push_back((eps + 0.5 * w * lam) / (1.0 - u * lam));
    return ev;
}

double scalar_complex_trace(const SolitonProfile& p, double u) {
    return scalar_complex_trace(p, u, default_base_einstein_sign(p.spec.soliton_class));
}

double scalar_complex_trace(const SolitonProfile& p, double u, double eps) {
    const Eigenvalues ev = ricci_eigenvalues(p, u, eps);
    double s = ev.fiber;
    for (double b : ev.base) s += b;
    return s;
}

double identity_constant(const SolitonProfile& p) {
    return identity_constant(p, default_base_einstein_sign(p.spec.soliton_class));
}

double identity_constant(const SolitonProfile& p, double eps) {
    return 2.0 * scalar_complex_trace(p, p.umin, eps);
}

double soliton_identity_residual(const SolitonProfile& p, double u) {
    return soliton_identity_residual(p, u,
                                     default_base_einstein_sign(p.spec.soliton_class));
}

double soliton_identity_residual(const SolitonProfile& p, double u, double eps) {
    if (u < p.umin) throw BelowUmin("soliton_identity_residual: U below Umin");
    const double rho = rho_of(p.spec.soliton_class);
    const double lhs = 2.0 * scalar_complex_trace(p, u, eps) +
                       p.e * p.e * phi(p, u) +
                       2.0 * rho * p.e * (u - p.umin);
    return lhs - identity_constant(p, eps);
}

namespace {

// Cumulative arclength over a fixed two-sided node grid: s-uniform in
// sqrt(x - Umin) on the lower half and sqrt(cap - x) on the upper half, one
// Kronrod panel per cell (every cell integrand is analytic). Supports fast
// monotone inversion t -> U for arclength-uniform sampling.
class ArcGrid {
public:
    ArcGrid(const SolitonProfile& p, double cap) : p_(p) {
        const double mid = 0.5 * (p.umin + cap);
        const int half = 512;
        nodes_.reserve(2 * half + 1);
        const double sb = std::sqrt(mid - p.umin);
        for (int j = 0; j <= half; ++j) {
            const double s = sb * static_cast<double>(j) / half;
            nodes_.push_back(p.umin + s * s);
        }
        const double st = std::sqrt(cap - mid);
        for (int j = half - 1; j >= 0; --j) {
            const double s = st * static_cast<double>(j) / half;
            nodes_.push_back(cap - s * s);
        }
        nodes_.back() = cap;
        tcum_.assign(nodes_.size(), 0.0);
        for (std::size_t j = 1; j < nodes_.size(); ++j)
            tcum_[j] = tcum_[j - 1] + cell_t(nodes_[j - 1], nodes_[j]);
    }

    double total() const { return tcum_.back(); }

    // U with arclength(U) = t, by bisection against the cumulative table.
    double invert(double t) const {
        if (t <= 0.0) return nodes_.front();
        if (t >= total()) return nodes_.back();
        const auto it = std::upper_bound(tcum_.begin(), tcum_.end(), t);
        const std::size_t j = static_cast<std::size_t>(it - tcum_.begin());
        double lo = nodes_[j - 1], hi = nodes_[j];
        const double t0 = tcum_[j - 1];
        for (int k = 0; k < 64 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++k) {
            const double m = 0.5 * (lo + hi);
            (cell_t(nodes_[j - 1], m) + t0 < t ? lo : hi) = m;
        }
        return 0.5 * (lo + hi);
    }

private:
    double cell_t(double a, double b) const {
        if (a == b) return 0.0;
        // Parametrize by the same substitution that built the side the cell
        // lives on, so phi's simple zeros never meet the quadrature nodes.
        if (b <= nodes_[nodes_.size() / 2]) {
            const double s_lo = std::sqrt(a - p_.umin);
            const double s_hi = std::sqrt(b - p_.umin);
            return detail::gk15_panel(
                       [&](double s) { return 2.0 * s / sqrt_phi(p_, p_.umin + s * s); },
                       s_lo, s_hi)
                .value;
        }
        const double top = nodes_.back();
        const double s_lo = std::sqrt(top - b);
        const double s_hi = std::sqrt(top - a);
        return detail::gk15_panel(
                   [&](double s) { return 2.0 * s / sqrt_phi(p_, top - s * s); },
                   s_lo, s_hi)
            .value;
    }

    const SolitonProfile& p_;
    std::vector<double> nodes_;
    std::vector<double> tcum_;
};

double r_increment(const SolitonProfile& p, double a, double b) {
    if (a == b) return 0.0;
    const double s_lo = std::sqrt(a - p.umin);
    const double s_hi = std::sqrt(b - p.umin);
    return detail::integrate(
        [&](double s) {
            const double x = p.umin + s * s;
            const double v = phi(p, x);
            if (v <= 0.0)
                throw QuadratureFailure("phi nonpositive inside a radius integral");
            return 2.0 * s / v;
        },
        s_lo, s_hi, 1e-11);
}

} // namespace

GeometryTable sample_geometry(const SolitonProfile& p, int n_samples,
                              std::optional<double> u_cap) {
    SampleOptions opt;
    opt.n_samples = n_samples;
    opt.u_cap = u_cap;
    return sample_geometry(p, opt);
}

GeometryTable sample_geometry(const SolitonProfile& p, const SampleOptions& opt) {
    if (opt.n_samples < 1) throw Error("sample_geometry: need n_samples >= 1");

    if (opt.u_cap && !std::isfinite(*opt.u_cap))
        throw Error("sample_geometry: u_cap must be finite");
    const double umax = umax_of(p);
    double cap = opt.u_cap.value_or(std::min(umax, p.umin + 50.0));
    bool cap_is_umax = false;
    if (!(cap > p.umin)) throw Error("sample_geometry: u_cap must exceed Umin");
    if (cap >= umax) {
        cap = umax;
        cap_is_umax = true;
    }

    const double eps =
        opt.base_einstein_sign.value_or(default_base_einstein_sign(p.spec.soliton_class));

    GeometryTable table;
    table.spec = p.spec;
    table.e = p.e;
    table.umin = p.umin;
    table.identity_constant = identity_constant(p, eps);

    const ArcGrid grid(p, cap);
    const double t_total = grid.total();

    const int n = opt.n_samples;
    std::vector<double> us(static_cast<std::size_t>(n) + 1);
    us[0] = p.umin;
    for (int i = 1; i <= n; ++i)
        us[static_cast<std::size_t>(i)] =
            grid.invert(t_total * static_cast<double>(i) / n);
    us.back() = cap;

    // r is anchored at U_ref and accumulated between consecutive rows. When
    // the cap is a zero of phi the 1/phi integrand diverges there, so the
    // last row gets r = +inf directly and is never integrated into.
    double u_ref = opt.u_ref.value_or(p.umin + 1.0);
    if (u_ref <= p.umin || u_ref > cap || (cap_is_umax && u_ref == cap))
        u_ref = 0.5 * (p.umin + cap);

    std::vector<double> log_r(us.size(), -kInf);
    {
        const std::size_t last = us.size() - 1;
        std::size_t anchor = 1;
        while (anchor + 1 < us.size() && us[anchor + 1] <= u_ref) ++anchor;
        if (cap_is_umax && anchor == last && last > 1) --anchor;
        if (cap_is_umax && anchor == last) {
            log_r[anchor] = kInf;  // the only sampled row sits on the zero
        } else {
            // r_increment integrates with signed endpoints, so this is the
            // correct log r regardless of which side of U_ref the anchor is.
            log_r[anchor] = r_increment(p, u_ref, us[anchor]);
        }
        for (std::size_t i = anchor + 1; i < us.size(); ++i) {
            const bool top_zero = cap_is_umax && i == last;
            log_r[i] = top_zero ? kInf
                                : log_r[i - 1] + r_increment(p, us[i - 1], us[i]);
        }
        for (std::size_t i = anchor; i-- > 1;)
            log_r[i] = log_r[i + 1] - r_increment(p, us[i], us[i + 1]);
    }

    table.rows.resize(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) {
        GeometrySample& row = table.rows[i];
        const double u = us[i];
        row.u = u;
        row.phi = phi(p, u);
        row.t = (i == 0) ? 0.0 : t_total * static_cast<double>(i) / n;
        row.r = (i == 0) ? 0.0 : std::exp(log_r[i]);
        row.f = potential_f(p, u);
        const Eigenvalues ric = ricci_eigenvalues(p, u, eps);
        row.ric_fiber = ric.fiber;
        row.ric_base = ric.base;
        row.scalar_c = ric.fiber;
        for (double b : ric.base) row.scalar_c += b;
        row.identity_residual = soliton_identity_residual(p, u, eps);
        // The ODE residual extends to Umin by continuity with value 0.
        row.ode_residual = (i == 0) ? 0.0 : koiso::ode_residual(p, u);
    }
    return table;
}

} // namespace koiso
