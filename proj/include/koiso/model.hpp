#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace koiso {

enum class SolitonClass { Shrinking, Expanding, Steady };

// Sign convention of the soliton equation: -1, +1, 0 respectively.
double rho_of(SolitonClass c);
std::string_view to_string(SolitonClass c);
std::optional<SolitonClass> class_from_string(std::string_view name);

// A line bundle over a Kahler-Einstein base, described by the constant
// eigenvalues of its curvature form, plus the soliton class being sought.
struct BundleSpec {
    int base_dim = 0;                 // m; complex dimension of the base
    std::vector<double> lambdas;      // m curvature eigenvalues
    SolitonClass soliton_class = SolitonClass::Steady;
};

// Unvalidated input, e.g. straight from a JSON job or CLI flags.
struct RawConfig {
    std::string soliton_class;
    std::optional<int> base_dim;      // defaults to lambdas.size()
    std::vector<double> lambdas;
};

enum class ViolationKind {
    EigenvalueRangeViolation,
    ClassMismatch,
    DimensionMismatch,
};

struct Violation {
    ViolationKind kind;
    int index;          // offending eigenvalue index, -1 when not applicable
    std::string message;
};

struct ValidationResult {
    std::optional<BundleSpec> spec;   // engaged iff violations is empty
    std::vector<Violation> violations;
    bool ok() const { return spec.has_value(); }
};

// Admissible eigenvalue ranges, strict with no tolerance:
//   Shrinking: lambda in (-1, 0); Expanding: lambda < -1;
//   Steady: lambda == -1 exactly (canonical bundle).
// Values within 1e-12 of a bound are rejected with a hint naming the bound.
ValidationResult validate_spec(const RawConfig& raw);
ValidationResult validate_spec(const BundleSpec& spec);  // idempotent

} // namespace koiso
