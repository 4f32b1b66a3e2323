#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "koiso/criticals.hpp"
#include "koiso/errors.hpp"
#include "koiso/model.hpp"
#include "koiso/profile.hpp"

using namespace koiso;

namespace {

BundleSpec shrinking(std::vector<double> lambdas) {
    BundleSpec s;
    s.soliton_class = SolitonClass::Shrinking;
    s.lambdas = std::move(lambdas);
    s.base_dim = static_cast<int>(s.lambdas.size());
    return s;
}

// plain midpoint bisection, no shared code with the library root finder
double bisect_plain(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("eta fixture for m=1, lambda=-1/2") {
    // eta = U^2/(2E) + ((1+1/E)/E) U + (1+1/E)/E^2; at E=1, eta(-1) = 1/2
    const BundleSpec spec = shrinking({-0.5});
    CHECK(eta_at(spec, -1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(eta_at(spec, 1.0, 1.0) == doctest::Approx(4.5).epsilon(1e-14));
    CHECK_THROWS_AS(eta_at(spec, -1.0, 0.0), DegenerateExponent);
}

TEST_CASE("E0 closed-form fixtures") {
    // m=1, lambda=-1/2: eta(-1,E) = 0 reduces to E^2 = 2
    const double e0 = find_e0(shrinking({-0.5}));
    CHECK(std::abs(e0 - std::sqrt(2.0)) <= 1e-10);

    // m=2, lambda=(-1/2,-1/2): the positive root of E^3 + E^2 - 2E - 6
    const double cubic_root = bisect_plain(
        [](double e) { return ((e + 1.0) * e - 2.0) * e - 6.0; }, 0.0, 3.0);
    const double e0_cubic = find_e0(shrinking({-0.5, -0.5}));
    CHECK(std::abs(e0_cubic - cubic_root) <= 1e-9);
    CHECK(cubic_root == doctest::Approx(1.8454660914359328).epsilon(1e-12));
}

TEST_CASE("E1 against a dense-scan oracle") {
    // m=1, lambda=-1/2: eta(1,E) - e^{2E} eta(-1,E) = 0 times E^3 reads
    // (3/2)E^2 + 2E + 1 - e^{2E} (1 - E^2/2) = 0.
    const auto f = [](double e) {
        return 1.5 * e * e + 2.0 * e + 1.0 -
               std::exp(2.0 * e) * (1.0 - 0.5 * e * e);
    };
    const BundleSpec spec = shrinking({-0.5});
    const double e0 = find_e0(spec);

    double lo = 0.0, hi = 0.0;
    int brackets = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double a = 0.01 + (e0 - 0.02) * i / n;
        const double b = 0.01 + (e0 - 0.02) * (i + 1) / n;
        if ((f(a) < 0) != (f(b) < 0)) {
            ++brackets;
            lo = a;
            hi = b;
        }
    }
    REQUIRE(brackets == 1);
    const double e1_oracle = bisect_plain(f, lo, hi);
    CHECK(e1_oracle == doctest::Approx(0.52761951989696282).epsilon(1e-12));

    const double e1 = find_e1(spec);
    CHECK(std::abs(e1 - e1_oracle) <= 1e-9);
}

TEST_CASE("find_criticals bundles values, brackets and residuals") {
    const BundleSpec spec = shrinking({-0.5});
    const CriticalValues c = find_criticals(spec);
    CHECK(c.e0 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(c.e1 == doctest::Approx(0.52761951989696282).epsilon(1e-10));
    CHECK(c.e0_bracket.first < c.e0);
    CHECK(c.e0 < c.e0_bracket.second);
    CHECK(c.e1_bracket.first < c.e1);
    CHECK(c.e1 < c.e1_bracket.second);
    CHECK(c.e0_residual <= 1e-10);
    CHECK(c.e1_residual <= 1e-10);
}

TEST_CASE("phi(1) vanishes at E1") {
    const BundleSpec spec = shrinking({-0.5});
    const double e1 = find_e1(spec);
    const SolitonProfile p = build_profile(spec, e1);
    CHECK(std::abs(phi(p, 1.0)) <= 1e-9);
}

TEST_CASE("eta(-1, E0) vanishes at E0") {
    const BundleSpec spec = shrinking({-0.5});
    CHECK(std::abs(eta_at(spec, -1.0, find_e0(spec))) <= 1e-10);
}

TEST_CASE("ordering holds on random shrinking specs") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> lam(-0.95, -0.05);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> ls(1 + static_cast<std::size_t>(rng() % 4));
        for (double& l : ls) l = lam(rng);
        const BundleSpec spec = shrinking(ls);
        const CriticalValues c = find_criticals(spec);
        CHECK(0.0 < c.e1);
        CHECK(c.e1 < c.e0);
        CHECK(std::isfinite(c.e0));

        // defining functions vanish at the roots, relative to their size
        // a step away (the scale bisection actually worked against)
        const double s0 = std::max({1.0, std::abs(e0_objective(spec, c.e0 - 0.1)),
                                    std::abs(e0_objective(spec, c.e0 + 0.1))});
        CHECK(std::abs(e0_objective(spec, c.e0)) <= 1e-10 * s0);
        const double s1 = std::max({1.0, std::abs(e1_objective(spec, c.e1 - 0.1)),
                                    std::abs(e1_objective(spec, c.e1 + 0.1))});
        CHECK(std::abs(e1_objective(spec, c.e1)) <= 1e-10 * s1);
    }
}

TEST_CASE("criticals are a shrinking-class notion") {
    BundleSpec steady;
    steady.soliton_class = SolitonClass::Steady;
    steady.lambdas = {-1.0};
    steady.base_dim = 1;
    CHECK_THROWS_AS(find_criticals(steady), Error);
    CHECK_THROWS_AS(find_e0(steady), Error);
    CHECK_THROWS_AS(find_e1(steady), Error);
}
