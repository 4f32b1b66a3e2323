#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "koiso/classify.hpp"
#include "koiso/criticals.hpp"
#include "koiso/errors.hpp"
#include "koiso/geometry.hpp"
#include "koiso/model.hpp"
#include "koiso/oracle.hpp"
#include "koiso/profile.hpp"

using namespace koiso;

namespace {

BundleSpec spec_of(SolitonClass cls, std::vector<double> lambdas) {
    BundleSpec s;
    s.soliton_class = cls;
    s.lambdas = std::move(lambdas);
    s.base_dim = static_cast<int>(s.lambdas.size());
    return s;
}

const BundleSpec kSteadyCanon = spec_of(SolitonClass::Steady, {-1.0});
const BundleSpec kCigar = spec_of(SolitonClass::Steady, {});

} // namespace

TEST_CASE("quadrature phi oracle fixtures") {
    CHECK(quad_phi_oracle(kSteadyCanon, -1.0, 0.0, 0.0) == 0.0);
    CHECK(std::abs(quad_phi_oracle(kSteadyCanon, -1.0, 0.0, 1.0) - 1.0) <= 1e-9);
    const double cig = 2.0 * (1.0 - std::exp(-2.0));
    CHECK(std::abs(quad_phi_oracle(kCigar, -1.0, 0.0, 2.0) - cig) <= 1e-9);
}

TEST_CASE("ode phi oracle fixtures") {
    const SolitonProfile steady = build_profile(kSteadyCanon, -1.0, 0.0);
    CHECK(std::abs(ode_phi_oracle(steady, 1.0) - 1.0) <= 1e-7);

    const SolitonProfile cig = build_profile(kCigar, -1.0, 0.0);
    CHECK(std::abs(ode_phi_oracle(cig, 5.0) - 2.0 * (1.0 - std::exp(-5.0))) <=
          1e-7);

    const BundleSpec shrink = spec_of(SolitonClass::Shrinking, {-0.5});
    const SolitonProfile p0 = build_profile(shrink, find_e0(shrink));
    CHECK(std::abs(ode_phi_oracle(p0, 0.0) - phi(p0, 0.0)) <= 1e-7);

    CHECK_THROWS_AS(ode_phi_oracle(steady, steady.umin), StepFailure);
}

TEST_CASE("finite-difference Ricci oracle fixtures") {
    const SolitonProfile steady = build_profile(kSteadyCanon, -1.0, 0.0);
    const Eigenvalues fd = fd_ricci_oracle(steady, 1.0);
    CHECK(std::abs(fd.fiber - 0.25) <= 1e-6);
    REQUIRE(fd.base.size() == 1);
    CHECK(std::abs(fd.base[0] - 0.25) <= 1e-6);

    const SolitonProfile cig = build_profile(kCigar, -1.0, 0.0);
    const Eigenvalues fc = fd_ricci_oracle(cig, 1.0);
    CHECK(std::abs(fc.fiber - std::exp(-1.0)) <= 1e-6);
    CHECK(fc.base.empty());

    CHECK_THROWS_AS(fd_ricci_oracle(steady, 1e-6), GridTooClose);
    CHECK_THROWS_AS(fd_ricci_oracle(steady, 1.0, 1e-6), Error);
    CHECK_THROWS_AS(fd_ricci_oracle(steady, 1.0, 0.1), Error);
}

TEST_CASE("analytic curvature matches finite differences at random points") {
    std::mt19937 rng(7401);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const auto check_at = [&](const SolitonProfile& p, double u) {
        const Eigenvalues an = ricci_eigenvalues(p, u);
        const Eigenvalues fd = fd_ricci_oracle(p, u);
        CHECK(std::abs(an.fiber - fd.fiber) <= 1e-6 * (1.0 + std::abs(an.fiber)));
        REQUIRE(an.base.size() == fd.base.size());
        for (std::size_t i = 0; i < an.base.size(); ++i)
            CHECK(std::abs(an.base[i] - fd.base[i]) <=
                  1e-6 * (1.0 + std::abs(an.base[i])));
    };

    for (int k = 0; k < 10; ++k) {
        const BundleSpec spec =
            spec_of(SolitonClass::Shrinking, {-0.1 - 0.8 * unit(rng)});
        const double e0 = find_e0(spec);
        const SolitonProfile p = build_profile(spec, e0 * (0.3 + 0.65 * unit(rng)));
        const double top = std::min(umax_of(p), p.umin + 10.0);
        check_at(p, p.umin + (0.2 + 0.2 * unit(rng)) * (top - p.umin));
    }
    for (int k = 0; k < 10; ++k) {
        const BundleSpec spec =
            spec_of(SolitonClass::Expanding, {-1.1 - 2.9 * unit(rng)});
        const SolitonProfile p = build_profile(spec, -0.2 - 2.8 * unit(rng));
        check_at(p, p.umin + 0.5 + 4.0 * unit(rng));
    }
    for (int k = 0; k < 10; ++k) {
        const int m = 1 + static_cast<int>(3.0 * unit(rng)) % 3;
        const BundleSpec spec =
            spec_of(SolitonClass::Steady, std::vector<double>(m, -1.0));
        const double umin = -0.5 + 1.5 * unit(rng);
        const SolitonProfile p =
            build_profile(spec, -0.2 - 2.8 * unit(rng), umin);
        check_at(p, umin + 0.5 + 4.0 * unit(rng));
    }
}

TEST_CASE("profile phi matches both independent constructions") {
    std::mt19937 rng(911);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const auto check = [&](const BundleSpec& spec, double e, double umin,
                           double u) {
        const SolitonProfile p = build_profile(spec, e, umin);
        const double v = phi(p, u);
        CHECK(std::abs(quad_phi_oracle(spec, e, umin, u) - v) <=
              1e-8 * (1.0 + std::abs(v)));
        CHECK(std::abs(ode_phi_oracle(p, u) - v) <= 1e-6 * (1.0 + std::abs(v)));
    };

    for (int k = 0; k < 8; ++k) {
        const BundleSpec spec =
            spec_of(SolitonClass::Shrinking, {-0.1 - 0.8 * unit(rng)});
        const double e = find_e0(spec) * (0.3 + 0.6 * unit(rng));
        const SolitonProfile p = build_profile(spec, e);
        const double top = std::min(umax_of(p), p.umin + 8.0);
        check(spec, e, -1.0, p.umin + (0.1 + 0.6 * unit(rng)) * (top - p.umin));
    }
    for (int k = 0; k < 6; ++k) {
        const BundleSpec spec =
            spec_of(SolitonClass::Expanding, {-1.2 - 2.0 * unit(rng)});
        check(spec, -0.2 - 2.0 * unit(rng), 1.0, 1.0 + 4.0 * unit(rng));
    }
    for (int k = 0; k < 6; ++k) {
        const double umin = -0.4 + 1.2 * unit(rng);
        check(kSteadyCanon, -0.2 - 2.0 * unit(rng), umin,
              umin + 0.2 + 4.0 * unit(rng));
    }
}

TEST_CASE("root scan oracle") {
    const auto one = root_scan_oracle([](double e) { return 1.0 - 0.5 * e * e; },
                                      0.0, 3.0, 10000);
    REQUIRE(one.size() == 1);
    CHECK(one[0].first < std::sqrt(2.0));
    CHECK(one[0].second > std::sqrt(2.0));
    CHECK(one[0].second - one[0].first <= 3.0 / 9999.0 + 1e-12);

    const auto cubic = root_scan_oracle(
        [](double e) { return ((e + 1.0) * e - 2.0) * e - 6.0; }, 0.0, 3.0,
        10000);
    REQUIRE(cubic.size() == 1);
    CHECK(cubic[0].first < 1.8454660914359328);
    CHECK(cubic[0].second > 1.8454660914359328);

    CHECK(root_scan_oracle([](double) { return 1.0; }, 0.0, 1.0, 100).empty());
}
