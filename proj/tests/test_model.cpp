#include <doctest.h>

#include <string>

#include "koiso/model.hpp"

using namespace koiso;

namespace {

RawConfig raw(std::string cls, std::vector<double> lam) {
    RawConfig r;
    r.soliton_class = std::move(cls);
    r.lambdas = std::move(lam);
    return r;
}

} // namespace

TEST_CASE("class plumbing") {
    CHECK(rho_of(SolitonClass::Shrinking) == -1.0);
    CHECK(rho_of(SolitonClass::Expanding) == 1.0);
    CHECK(rho_of(SolitonClass::Steady) == 0.0);
    CHECK(to_string(SolitonClass::Expanding) == "expanding");
    CHECK(class_from_string("steady") == SolitonClass::Steady);
    CHECK(!class_from_string("Steady").has_value());
    CHECK(!class_from_string("").has_value());
}

TEST_CASE("valid specs per class") {
    CHECK(validate_spec(raw("shrinking", {-0.5})).ok());
    CHECK(validate_spec(raw("shrinking", {-0.9, -0.1, -0.5})).ok());
    CHECK(validate_spec(raw("expanding", {-2.0})).ok());
    CHECK(validate_spec(raw("steady", {-1.0, -1.0})).ok());
    CHECK(validate_spec(raw("steady", {})).ok());  // point base: the cigar

    const ValidationResult r = validate_spec(raw("shrinking", {-0.5}));
    REQUIRE(r.spec.has_value());
    CHECK(r.spec->base_dim == 1);
    CHECK(r.spec->soliton_class == SolitonClass::Shrinking);
}

TEST_CASE("eigenvalue range rejections") {
    auto kind_of = [](const ValidationResult& r) {
        REQUIRE(!r.ok());
        REQUIRE(!r.violations.empty());
        return r.violations.front().kind;
    };

    CHECK(kind_of(validate_spec(raw("shrinking", {-1.0}))) ==
          ViolationKind::EigenvalueRangeViolation);
    CHECK(kind_of(validate_spec(raw("shrinking", {0.0}))) ==
          ViolationKind::EigenvalueRangeViolation);
    CHECK(kind_of(validate_spec(raw("shrinking", {0.5}))) ==
          ViolationKind::EigenvalueRangeViolation);
    CHECK(kind_of(validate_spec(raw("expanding", {-1.0}))) ==
          ViolationKind::EigenvalueRangeViolation);
    CHECK(kind_of(validate_spec(raw("expanding", {-0.5}))) ==
          ViolationKind::EigenvalueRangeViolation);
    // steady with a non-canonical eigenvalue is a class mismatch
    CHECK(kind_of(validate_spec(raw("steady", {-0.5}))) ==
          ViolationKind::ClassMismatch);

    const ValidationResult multi =
        validate_spec(raw("shrinking", {-0.5, 0.25, -2.0}));
    CHECK(multi.violations.size() == 2);
    CHECK(multi.violations[0].index == 1);
    CHECK(multi.violations[1].index == 2);
}

TEST_CASE("bound proximity hints") {
    const ValidationResult near_minus_one =
        validate_spec(raw("shrinking", {-1.0 + 1e-13}));
    REQUIRE(!near_minus_one.ok());
    CHECK(near_minus_one.violations.front().message.find("bound -1") !=
          std::string::npos);
    CHECK(near_minus_one.violations.front().message.find(
              "belongs to the steady class") != std::string::npos);

    const ValidationResult near_zero = validate_spec(raw("shrinking", {-1e-13}));
    REQUIRE(!near_zero.ok());
    CHECK(near_zero.violations.front().message.find("bound 0") !=
          std::string::npos);

    const ValidationResult exp_near =
        validate_spec(raw("expanding", {-1.0 - 1e-13}));
    REQUIRE(!exp_near.ok());
    CHECK(exp_near.violations.front().message.find("bound -1") !=
          std::string::npos);

    // comfortably inside the range: no hint fires
    CHECK(validate_spec(raw("shrinking", {-1.0 + 1e-9})).ok());
    CHECK(validate_spec(raw("expanding", {-1.0 - 1e-9})).ok());
}

TEST_CASE("dimension and class checks") {
    RawConfig r = raw("shrinking", {-0.5, -0.5});
    r.base_dim = 3;
    const ValidationResult bad_dim = validate_spec(r);
    REQUIRE(!bad_dim.ok());
    CHECK(bad_dim.violations.front().kind == ViolationKind::DimensionMismatch);

    const ValidationResult unknown = validate_spec(raw("oscillating", {-0.5}));
    REQUIRE(!unknown.ok());
    CHECK(unknown.violations.front().kind == ViolationKind::ClassMismatch);
    CHECK(unknown.violations.front().message.find("oscillating") !=
          std::string::npos);

    BundleSpec neg;
    neg.base_dim = -1;
    neg.soliton_class = SolitonClass::Steady;
    CHECK(!validate_spec(neg).ok());
}

TEST_CASE("validation is idempotent") {
    const ValidationResult first = validate_spec(raw("expanding", {-3.0, -1.5}));
    REQUIRE(first.ok());
    const ValidationResult second = validate_spec(*first.spec);
    REQUIRE(second.ok());
    CHECK(second.spec->base_dim == first.spec->base_dim);
    CHECK(second.spec->lambdas == first.spec->lambdas);
    CHECK(second.spec->soliton_class == first.spec->soliton_class);
}
