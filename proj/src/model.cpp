#include "koiso/model.hpp"

#include <cmath>
#include <cstdio>

namespace koiso {
namespace {

constexpr double kBoundProximity = 1e-12;

std::string fmt_lambda(int i, double v, const char* rest) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "lambda[%d] = %.17g %s", i, v, rest);
    return buf;
}

} // namespace

double rho_of(SolitonClass c) {
    switch (c) {
        case SolitonClass::Shrinking: return -1.0;
        case SolitonClass::Expanding: return 1.0;
        case SolitonClass::Steady: return 0.0;
    }
    return 0.0;
}

std::string_view to_string(SolitonClass c) {
    switch (c) {
        case SolitonClass::Shrinking: return "shrinking";
        case SolitonClass::Expanding: return "expanding";
        case SolitonClass::Steady: return "steady";
    }
    return "?";
}

std::optional<SolitonClass> class_from_string(std::string_view name) {
    if (name == "shrinking") return SolitonClass::Shrinking;
    if (name == "expanding") return SolitonClass::Expanding;
    if (name == "steady") return SolitonClass::Steady;
    return std::nullopt;
}

ValidationResult validate_spec(const BundleSpec& spec) {
    ValidationResult out;
    auto reject = [&](ViolationKind kind, int index, std::string msg) {
        out.violations.push_back({kind, index, std::move(msg)});
    };

    if (spec.base_dim < 0)
        reject(ViolationKind::DimensionMismatch, -1, "base_dim must be nonnegative");
    else if (spec.base_dim != static_cast<int>(spec.lambdas.size()))
        reject(ViolationKind::DimensionMismatch, -1,
               "base_dim = " + std::to_string(spec.base_dim) + " but " +
                   std::to_string(spec.lambdas.size()) + " eigenvalues given");

    for (int i = 0; i < static_cast<int>(spec.lambdas.size()); ++i) {
        const double lam = spec.lambdas[static_cast<std::size_t>(i)];
        if (!std::isfinite(lam)) {
            reject(ViolationKind::EigenvalueRangeViolation, i,
                   fmt_lambda(i, lam, "is not finite"));
            continue;
        }
        switch (spec.soliton_class) {
            case SolitonClass::Shrinking:
                if (lam <= -1.0 || lam >= 0.0)
                    reject(ViolationKind::EigenvalueRangeViolation, i,
                           fmt_lambda(i, lam, "outside (-1, 0)"));
                else if (lam + 1.0 <= kBoundProximity)
                    reject(ViolationKind::EigenvalueRangeViolation, i,
                           fmt_lambda(i, lam,
                                      "within 1e-12 of the bound -1; the bound is excluded "
                                      "(lambda = -1 belongs to the steady class)"));
                else if (-lam <= kBoundProximity)
                    reject(ViolationKind::EigenvalueRangeViolation, i,
                           fmt_lambda(i, lam,
                                      "within 1e-12 of the bound 0; the bound is excluded"));
                break;
            case SolitonClass::Expanding:
                if (lam >= -1.0)
                    reject(ViolationKind::EigenvalueRangeViolation, i,
                           fmt_lambda(i, lam, "must satisfy lambda < -1"));
                else if (-1.0 - lam <= kBoundProximity)
                    reject(ViolationKind::EigenvalueRangeViolation, i,
                           fmt_lambda(i, lam,
                                      "within 1e-12 of the bound -1; the bound is excluded "
                                      "(lambda = -1 belongs to the steady class)"));
                break;
            case SolitonClass::Steady:
                if (lam != -1.0)
                    reject(ViolationKind::ClassMismatch, i,
                           fmt_lambda(i, lam,
                                      "but the steady class requires the canonical bundle, "
                                      "lambda = -1 exactly"));
                break;
        }
    }

    if (out.violations.empty()) out.spec = spec;
    return out;
}

ValidationResult validate_spec(const RawConfig& raw) {
    const auto cls = class_from_string(raw.soliton_class);
    if (!cls) {
        ValidationResult out;
        out.violations.push_back(
            {ViolationKind::ClassMismatch, -1,
             "unknown soliton class '" + raw.soliton_class +
                 "' (expected shrinking, expanding or steady)"});
        return out;
    }
    BundleSpec spec;
    spec.soliton_class = *cls;
    spec.lambdas = raw.lambdas;
    spec.base_dim = raw.base_dim.value_or(static_cast<int>(raw.lambdas.size()));
    return validate_spec(spec);
}

} // namespace koiso
