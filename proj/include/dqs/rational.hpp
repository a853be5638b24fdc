#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace dqs {

using BigInt = mpz_class;
using Rational = mpq_class;

inline bool is_integer(const Rational& q) {
    return mpz_cmp_ui(q.get_den().get_mpz_t(), 1) == 0;
}

inline BigInt numerator(const Rational& q) { return q.get_num(); }
inline BigInt denominator(const Rational& q) { return q.get_den(); }

// Parses "p" or "p/q" in decimal. Throws std::invalid_argument on anything else.
Rational rational_from_string(const std::string& text);

// Lowest-terms decimal form, "p" when the denominator is 1, otherwise "p/q".
std::string rational_to_string(const Rational& q);

// Exact square root of a rational square; throws std::domain_error otherwise.
Rational rational_sqrt(const Rational& q);

BigInt binomial(unsigned long n, unsigned long k);
BigInt catalan(unsigned long n);

}  // namespace dqs
