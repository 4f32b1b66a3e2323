#include "koiso/quadrature.hpp"

#include <cmath>
#include <vector>

#include "koiso/errors.hpp"

namespace koiso::detail {
namespace {

// Gauss 7 / Kronrod 15 nodes on [-1, 1], positive half.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
// Gauss weights sit at the odd Kronrod indices.
constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

} // namespace

QuadResult gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fsum;
        if (i == 7) {
            fsum = f(c);
        } else {
            fsum = f(c - h * xgk[i]) + f(c + h * xgk[i]);
        }
        if (std::isnan(fsum))
            throw QuadratureFailure("integrand returned NaN inside panel");
        kron += wgk[i] * fsum;
        if (i % 2 == 1) gauss += wg[i / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    return {kron, std::abs(kron - gauss)};
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol) {
    if (a == b) return 0.0;

    struct Panel {
        double a, b, value, error;
        int depth;
    };

    const QuadResult whole = gk15_panel(f, a, b);
    std::vector<Panel> stack{{a, b, whole.value, whole.error, 0}};
    double total = whole.value;
    double total_err = whole.error;
    const int max_depth = 60;
    const std::size_t max_panels = 20000;
    std::size_t panels_done = 0;

    std::vector<Panel> accepted;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const double budget =
            std::max(abs_tol, rel_tol * std::abs(total)) *
            std::max(1e-302, std::abs(p.b - p.a) / std::abs(b - a));
        if (p.error <= budget || p.depth >= max_depth) {
            if (p.depth >= max_depth && p.error > 1e3 * budget)
                throw QuadratureFailure("panel depth exhausted without convergence");
            accepted.push_back(p);
            continue;
        }
        if (++panels_done > max_panels)
            throw QuadratureFailure("panel budget exhausted");
        const double m = 0.5 * (p.a + p.b);
        const QuadResult left = gk15_panel(f, p.a, m);
        const QuadResult right = gk15_panel(f, m, p.b);
        total += left.value + right.value - p.value;
        total_err += left.error + right.error - p.error;
        stack.push_back({p.a, m, left.value, left.error, p.depth + 1});
        stack.push_back({m, p.b, right.value, right.error, p.depth + 1});
    }

    double sum = 0.0;
    for (const Panel& p : accepted) sum += p.value;
    if (std::isnan(sum)) throw QuadratureFailure("integral evaluated to NaN");
    return sum;
}

} // namespace koiso::detail
