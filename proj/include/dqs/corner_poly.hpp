#pragma once

#include <span>
#include <vector>

#include "dqs/series.hpp"

namespace dqs {

// Polynomial in the corner weight `a` with arbitrary-precision integer
// coefficients. Trailing zero coefficients are trimmed.
class CornerPoly {
public:
    CornerPoly() = default;
    explicit CornerPoly(std::vector<BigInt> coeffs);

    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    // Coefficient of a^k, zero beyond the stored degree.
    const BigInt& coeff(long k) const;
    const std::vector<BigInt>& coeffs() const { return c_; }

    Rational eval(const Rational& a) const;
    BigInt eval_int(const BigInt& a) const;
    BigInt sum_of_coeffs() const;  // value at a = 1
    CornerPoly derivative() const;

    // Coefficients when rewritten in powers of (a + 1).
    std::vector<BigInt> shifted_basis_coeffs() const;

    friend CornerPoly operator+(const CornerPoly& p, const CornerPoly& q);
    friend bool operator==(const CornerPoly& p, const CornerPoly& q);

private:
    std::vector<BigInt> c_;
};

// Evaluates sum_n argU(t)^n * outer[n](argA(t)) exactly through order N.
// Both arguments must have zero constant term; the outer family is consumed
// for n <= N only (argU^n contributes nothing past that).
// Throws std::domain_error("composition requires positive valuation") when
// argU has a nonzero constant term, std::domain_error for argA likewise.
Series series_compose(std::span<const CornerPoly> outer, const Series& argA,
                      const Series& argU, long N);

}  // namespace dqs
