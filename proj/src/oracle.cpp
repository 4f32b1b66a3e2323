#include "koiso/oracle.hpp"

#include <cmath>

#include "koiso/errors.hpp"
#include "koiso/quadrature.hpp"
#include "koiso/rootfind.hpp"

namespace koiso {
namespace {

double q_product(const BundleSpec& spec, double x) {
    double q = 1.0;
    for (double lam : spec.lambdas) q *= 1.0 - x * lam;
    return q;
}

double source_at(SolitonClass c, double x) {
    switch (c) {
        case SolitonClass::Shrinking: return -2.0 * x;
        case SolitonClass::Expanding: return 2.0 * x;
        case SolitonClass::Steady: return 2.0;
    }
    return 0.0;
}

double ode_rhs(const SolitonProfile& p, double u, double ph) {
    return p.e * ph - ph * p.q_prime.eval(u) / p.q.eval(u) +
           source_at(p.spec.soliton_class, u);
}

// Arclength offset: U(t0 + delta) from U(t0) = u0 by RK4 on dU/dt = sqrt(phi).
double march_u_of_t(const SolitonProfile& p, double u0, double delta) {
    const int n = 128;
    const double h = delta / n;
    double u = u0;
    for (int i = 0; i < n; ++i) {
        const auto g = [&](double x) { return std::sqrt(phi(p, x)); };
        const double k1 = g(u);
        const double k2 = g(u + 0.5 * h * k1);
        const double k3 = g(u + 0.5 * h * k2);
        const double k4 = g(u + h * k3);
        u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(u)) throw StepFailure("arclength march diverged");
    }
    return u;
}

struct FdPass {
    double fiber;  // Ricci endomorphism fiber eigenvalue at this h
    double d1;     // u d/dt log(u^2 p) at the center
};

FdPass fd_pass(const SolitonProfile& p, double u, double h) {
    // L(delta) = log(u^2 p) = log(phi * Q) at arclength offsets delta.
    const double offs[5] = {-2.0 * h, -h, 0.0, h, 2.0 * h};
    double L[5], sq[5];
    for (int i = 0; i < 5; ++i) {
        const double ui = (offs[i] == 0.0) ? u : march_u_of_t(p, u, offs[i]);
        const double ph = phi(p, ui);
        if (ph <= 0.0) throw GridTooClose("fd grid left the phi > 0 range");
        L[i] = std::log(ph * p.q.eval(ui));
        sq[i] = std::sqrt(ph);
    }
    const double x_m = sq[1] * (L[2] - L[0]) / (2.0 * h);
    const double x_0 = sq[2] * (L[3] - L[1]) / (2.0 * h);
    const double x_p = sq[3] * (L[4] - L[2]) / (2.0 * h);
    const double r00 = -sq[2] * (x_p - x_m) / (2.0 * h);
    return {r00 / (2.0 * phi(p, u)), x_0};
}

} // namespace

double quad_phi_oracle(const BundleSpec& spec, double e, double umin, double u) {
    if (u == umin) return 0.0;
    const double integral = detail::integrate(
        [&](double x) {
            return std::exp(e * (u - x)) * source_at(spec.soliton_class, x) *
                   q_product(spec, x);
        },
        umin, u, 1e-11);
    return integral / q_product(spec, u);
}

double ode_phi_oracle(const SolitonProfile& p, double u) {
    if (u <= p.umin) throw StepFailure("ode_phi_oracle: U must exceed Umin");
    const double u0 = p.umin + 1e-8;
    double ph = 2e-8;
    if (u <= u0) return 2.0 * (u - p.umin);
    const double span = u - u0;
    const long n = std::max(1L, static_cast<long>(std::ceil(span / 1e-3)));
    if (n > 5000000L) throw StepFailure("ode_phi_oracle: span too large");
    const double h = span / static_cast<double>(n);
    double x = u0;
    for (long i = 0; i < n; ++i) {
        const double k1 = ode_rhs(p, x, ph);
        const double k2 = ode_rhs(p, x + 0.5 * h, ph + 0.5 * h * k1);
        const double k3 = ode_rhs(p, x + 0.5 * h, ph + 0.5 * h * k2);
        const double k4 = ode_rhs(p, x + h, ph + h * k3);
        ph += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        x = u0 + span * static_cast<double>(i + 1) / static_cast<double>(n);
        if (!std::isfinite(ph)) throw StepFailure("ode_phi_oracle: state diverged");
    }
    return ph;
}

Eigenvalues fd_ricci_oracle(const SolitonProfile& p, double u, double h_t) {
    return fd_ricci_oracle(p, u, h_t,
                           default_base_einstein_sign(p.spec.soliton_class));
}

Eigenvalues fd_ricci_oracle(const SolitonProfile& p, double u, double h_t,
                            double eps) {
    if (h_t < 1e-5 || h_t > 1e-2)
        throw Error("fd_ricci_oracle: h_t must lie in [1e-5, 1e-2]");
    if (arclength_t(p, u) < 3.0 * h_t)
        throw GridTooClose("fd_ricci_oracle: point within 3 h_t of the zero section");

    const FdPass coarse = fd_pass(p, u, h_t);
    const FdPass fine = fd_pass(p, u, 0.5 * h_t);
    const double fiber = (4.0 * fine.fiber - coarse.fiber) / 3.0;
    const double d1 = (4.0 * fine.d1 - coarse.d1) / 3.0;

    Eigenvalues ev;
    ev.fiber = fiber;
    ev.base.reserve(p.spec.lambdas.size());
    for (double lam : p.spec.lambdas)
        ev.base.push_back((eps + 0.5 * d1 * lam) / (1.0 - u * lam));
    return ev;
}

std::vector<std::pair<double, double>> root_scan_oracle(
    const std::function<double(double)>& fn, double lo, double hi, int n) {
    return detail::scan_sign_changes(fn, lo, hi, n);
}

} // namespace koiso
