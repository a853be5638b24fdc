#pragma once

#include <initializer_list>
#include <vector>

#include "dqs/rational.hpp"

namespace dqs {

// Power series in one variable over exact rationals, truncated at a stated
// order: coefficient i of variable^i is known for 0 <= i <= order().
// Arithmetic never claims precision beyond the minimum order of its inputs.
// Values are immutable in practice; every operation returns a fresh series.
class Series {
public:
    // Zero series of the given order.
    explicit Series(long order);
    // order = coeffs.size() - 1.
    explicit Series(std::vector<Rational> coeffs);

    static Series constant(const Rational& value, long order);
    static Series variable(long order);
    // Polynomial from low-order coefficients, zero-padded up to `order`.
    static Series polynomial(std::initializer_list<long> coeffs, long order);
    static Series polynomial(std::vector<Rational> coeffs, long order);

    long order() const { return static_cast<long>(c_.size()) - 1; }
    const Rational& operator[](long i) const { return c_[static_cast<size_t>(i)]; }
    Rational& coeff(long i) { return c_[static_cast<size_t>(i)]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    // order()+1 when the series is identically zero through its order.
    long valuation() const;
    bool is_zero() const;
    // True when every stored coefficient has denominator 1.
    bool integral() const;

    Series truncated(long new_order) const;  // new_order <= order()
    // Multiply by variable^k; the result order grows by k (exact monomial).
    Series shifted_up(long k) const;
    // Divide by variable^k; throws if any of the low k coefficients is nonzero.
    Series shifted_down(long k) const;

    Series derivative() const;

    Series operator-() const;
    Series& operator+=(const Series& rhs);
    Series& operator-=(const Series& rhs);

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(const Rational& s, const Series& a);
    friend Series operator*(const Series& a, const Rational& s);
    friend Series operator+(const Series& a, const Rational& s);
    friend Series operator+(const Rational& s, const Series& a);
    friend Series operator-(const Series& a, const Rational& s);
    friend Series operator-(const Rational& s, const Series& a);
    friend bool operator==(const Series& a, const Series& b);

private:
    std::vector<Rational> c_;
};

// Quotient a/b; throws std::domain_error("non-invertible series") when b has
// zero constant term.
Series div(const Series& a, const Series& b);
Series inverse(const Series& a);

// Square root with constant term the positive rational root of a[0]; throws
// std::domain_error when a[0] is not a rational square.
Series series_sqrt(const Series& a);

// Integer power (n >= 0) at the order of `a`.
Series pow(const Series& a, long n);

// Zero-extends to a higher order. This claims no precision; it exists for
// iterative solvers whose iterates are approximations by construction.
Series pad(const Series& a, long order);

std::string to_string(const Series& a, long max_terms = -1);

}  // namespace dqs
