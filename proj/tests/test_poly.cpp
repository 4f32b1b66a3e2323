#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "koiso/errors.hpp"
#include "koiso/poly.hpp"
#include "koiso/quadrature.hpp"

using namespace koiso;

TEST_CASE("polynomial basics") {
    const Polynomial p({1.0, -3.0, 2.0});  // 1 - 3x + 2x^2
    CHECK(p.degree() == 2);
    CHECK(p.eval(0.0) == 1.0);
    CHECK(p.eval(1.0) == 0.0);
    CHECK(p.eval(2.0) == doctest::Approx(3.0));
    CHECK(p[5] == 0.0);

    const Polynomial dp = p.derivative();
    CHECK(dp.degree() == 1);
    CHECK(dp.eval(0.5) == doctest::Approx(-1.0));

    const Polynomial ip = p.antiderivative();
    CHECK(ip[0] == 0.0);
    CHECK(ip.derivative().eval(0.7) == doctest::Approx(p.eval(0.7)));

    CHECK(Polynomial(std::vector<double>{}).is_zero());
    CHECK(Polynomial(std::vector<double>{}).degree() == -1);
    CHECK(Polynomial({1.0, 2.0, 0.0, 0.0}).degree() == 1);  // exact-zero tail trims
    CHECK(Polynomial::constant(4.0).eval(123.0) == 4.0);

    const Polynomial a({1.0, 1.0});
    const Polynomial b({0.0, 2.0, 3.0});
    CHECK((a + b).eval(2.0) == doctest::Approx(a.eval(2.0) + b.eval(2.0)));
    CHECK((a - b).eval(2.0) == doctest::Approx(a.eval(2.0) - b.eval(2.0)));
    CHECK((a * b).eval(2.0) == doctest::Approx(a.eval(2.0) * b.eval(2.0)));
    CHECK((2.5 * a).eval(3.0) == doctest::Approx(2.5 * a.eval(3.0)));
    CHECK((-a).eval(3.0) == -a.eval(3.0));

    CHECK(p.max_abs_coeff() == 3.0);
    CHECK(p.eval_magnitude(-2.0) == doctest::Approx(1.0 + 6.0 + 8.0));
}

TEST_CASE("q_from_eigenvalues") {
    CHECK(q_from_eigenvalues({}).degree() == 0);
    CHECK(q_from_eigenvalues({}).eval(7.0) == 1.0);

    const std::vector<double> one{-0.5};
    const Polynomial q1 = q_from_eigenvalues(one);
    CHECK(q1.eval(1.0) == doctest::Approx(1.5));
    CHECK(q1.eval(-1.0) == doctest::Approx(0.5));

    const std::vector<double> two{-0.5, -2.0};
    const Polynomial q2 = q_from_eigenvalues(two);
    CHECK(q2.eval(3.0) == doctest::Approx((1.0 + 1.5) * (1.0 + 6.0)));
}

TEST_CASE("taylor_shift agrees with direct evaluation") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coeff(-10.0, 10.0);
    std::uniform_real_distribution<double> shift(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> cs(1 + static_cast<std::size_t>(rng() % 7));
        for (double& c : cs) c = coeff(rng);
        const Polynomial p(cs);
        const double c = shift(rng);
        const Polynomial sh = taylor_shift(p, c);
        CHECK(sh.degree() == p.degree());
        for (double d : {0.0, 0.3, -1.7}) {
            const double want = p.eval(c + d);
            const double scale = p.eval_magnitude(std::abs(c) + std::abs(d));
            CHECK(std::abs(sh.eval(d) - want) <= 1e-13 * (1.0 + scale));
        }
    }
    // shifting by 0 is the identity
    const Polynomial p({2.0, -1.0, 5.0});
    const Polynomial sh0 = taylor_shift(p, 0.0);
    for (std::size_t k = 0; k < 3; ++k) CHECK(sh0[k] == p[k]);
}

TEST_CASE("exp-weighted antiderivative fixture") {
    // E*sigma - sigma' = x + x^2/2 has the closed-form polynomial solution
    // sigma = x^2/(2E) + ((1+1/E)/E) x + (1+1/E)/E^2.
    const Polynomial s({0.0, 1.0, 0.5});
    for (double e : {2.0, -1.0, 0.37}) {
        const Polynomial sigma = exp_weighted_antiderivative(s, e);
        REQUIRE(sigma.degree() == 2);
        CHECK(sigma[2] == doctest::Approx(1.0 / (2.0 * e)));
        CHECK(sigma[1] == doctest::Approx((1.0 + 1.0 / e) / e));
        CHECK(sigma[0] == doctest::Approx((1.0 + 1.0 / e) / (e * e)));
    }
    CHECK_THROWS_AS(exp_weighted_antiderivative(s, 0.0), DegenerateExponent);
}

TEST_CASE("recurrence residual stays at machine scale") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> coeff(-10.0, 10.0);
    std::uniform_real_distribution<double> mag(0.1, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> cs(1 + static_cast<std::size_t>(rng() % 9));
        for (double& c : cs) c = coeff(rng);
        const Polynomial s(cs);
        const double e = (rng() % 2 ? 1.0 : -1.0) * mag(rng);
        const Polynomial sigma = exp_weighted_antiderivative(s, e);
        CHECK(exp_antiderivative_residual(s, e, sigma) <= 1e-12);
    }
}

TEST_CASE("sigma matches quadrature of its defining integral") {
    // d/dx[-e^{-Ex} sigma] = e^{-Ex} S means
    //   int_a^b e^{-Ex} S dx = e^{-Ea} sigma(a) - e^{-Eb} sigma(b).
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> coeff(-5.0, 5.0);
    std::uniform_real_distribution<double> mag(0.3, 4.0);
    std::uniform_real_distribution<double> ab(-2.0, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<double> cs(1 + static_cast<std::size_t>(rng() % 6));
        for (double& c : cs) c = coeff(rng);
        const Polynomial s(cs);
        const double e = (rng() % 2 ? 1.0 : -1.0) * mag(rng);
        const Polynomial sigma = exp_weighted_antiderivative(s, e);

        double a = ab(rng), b = ab(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 0.1) b = a + 0.1;
        const double quad = detail::integrate(
            [&](double x) { return std::exp(-e * x) * s.eval(x); }, a, b, 1e-11);
        const double ends =
            std::exp(-e * a) * sigma.eval(a) - std::exp(-e * b) * sigma.eval(b);
        const double scale = std::abs(quad) +
                             std::exp(-e * a) * sigma.eval_magnitude(a) +
                             std::exp(-e * b) * sigma.eval_magnitude(b);
        CHECK(std::abs(quad - ends) <= 1e-8 * (1.0 + scale));
    }
}
