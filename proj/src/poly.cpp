#include "koiso/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "koiso/errors.hpp"

namespace koiso {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Polynomial Polynomial::constant(double c) {
    return Polynomial(std::vector<double>{c});
}

double Polynomial::eval(double x) const {
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

double Polynomial::eval_magnitude(double x) const {
    double acc = 0.0;
    const double ax = std::abs(x);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * ax + std::abs(coeffs_[i]);
    return acc;
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial{};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    if (coeffs_.empty()) return Polynomial{};
    std::vector<double> a(coeffs_.size() + 1, 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
    return Polynomial(std::move(a));
}

Polynomial Polynomial::operator-() const {
    std::vector<double> c(coeffs_);
    for (double& v : c) v = -v;
    return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial{};
    std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> c(p.coeffs_);
    for (double& v : c) v *= s;
    return Polynomial(std::move(c));
}

Polynomial q_from_eigenvalues(std::span<const double> lambdas) {
    Polynomial q = Polynomial::constant(1.0);
    for (double lam : lambdas) q = q * Polynomial(std::vector<double>{1.0, -lam});
    return q;
}

Polynomial taylor_shift(const Polynomial& p, double c) {
    // Horner's synthetic-division form of the shift: divide by (x - c)
    // repeatedly; the remainders are p(c), p'(c), p''(c)/2!, ...
    std::vector<double> a(p.coeffs().begin(), p.coeffs().end());
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = n - 1; i > k; --i) a[i - 1] += c * a[i];
    return Polynomial(std::move(a));
}

Polynomial exp_weighted_antiderivative(const Polynomial& s, double e) {
    if (e == 0.0)
        throw DegenerateExponent(
            "exp_weighted_antiderivative: E = 0; use the plain antiderivative");
    if (s.is_zero()) return Polynomial{};
    const int n = s.degree();
    std::vector<double> sig(static_cast<std::size_t>(n) + 1, 0.0);
    sig[n] = s[static_cast<std::size_t>(n)] / e;
    for (int k = n - 1; k >= 0; --k)
        sig[k] = (s[static_cast<std::size_t>(k)] +
                  static_cast<double>(k + 1) * sig[static_cast<std::size_t>(k) + 1]) / e;
    return Polynomial(std::move(sig));
}

double exp_antiderivative_residual(const Polynomial& s, double e,
                                   const Polynomial& sigma) {
    const Polynomial res = e * sigma - sigma.derivative() - s;
    double scale = s.max_abs_coeff();
    scale = std::max(scale, std::abs(e) * sigma.max_abs_coeff());
    scale = std::max(scale, sigma.derivative().max_abs_coeff());
    if (scale == 0.0) return res.max_abs_coeff() == 0.0 ? 0.0 : 1.0;
    return res.max_abs_coeff() / scale;
}

} // namespace koiso
