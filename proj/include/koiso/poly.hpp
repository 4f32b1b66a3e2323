#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace koiso {

// Dense univariate real polynomial, coefficients in ascending order.
// An empty coefficient vector is the zero polynomial. Construction trims
// trailing coefficients that are exactly 0.0; computed near-zero leading
// coefficients are kept so that cancellation stays visible to callers.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    static Polynomial constant(double c);

    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is -1 by convention.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    double operator[](std::size_t k) const {
        return k < coeffs_.size() ? coeffs_[k] : 0.0;
    }
    std::span<const double> coeffs() const { return coeffs_; }

    double eval(double x) const;            // Horner
    // Sum_k |c_k| |x|^k: the conditioning scale of eval at x.
    double eval_magnitude(double x) const;
    double max_abs_coeff() const;

    Polynomial derivative() const;
    Polynomial antiderivative() const;      // constant term 0

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double s, const Polynomial& p);

private:
    std::vector<double> coeffs_;
};

// Q(U) = prod_i (1 - U * lambda_i). Empty input gives the constant 1.
Polynomial q_from_eigenvalues(std::span<const double> lambdas);

// Coefficients of p(c + d) as a polynomial in d. Evaluating the shifted
// polynomial at small d is cancellation-free, which matters wherever p has
// a root at or near c.
Polynomial taylor_shift(const Polynomial& p, double c);

// The polynomial solution sigma of E*sigma - sigma' = S, i.e.
//   d/dx [ -exp(-E x) sigma(x) ] = exp(-E x) S(x).
// Solved top-down: sigma_n = S_n / E, sigma_k = (S_k + (k+1) sigma_{k+1}) / E.
// Throws DegenerateExponent when E == 0 (use -antiderivative there).
Polynomial exp_weighted_antiderivative(const Polynomial& s, double e);

// Backward-relative residual of the recurrence: the largest coefficient of
// E*sigma - sigma' - S divided by the scale of the terms that formed it,
// max(max|S_k|, |E| max|sigma_k|, max|k sigma_k|). Exact arithmetic gives 0;
// doubles give a few ulp regardless of how strongly sigma's coefficients
// outgrow S's (they grow like k!/E^{k+1} for small |E|).
double exp_antiderivative_residual(const Polynomial& s, double e,
                                   const Polynomial& sigma);

} // namespace koiso
