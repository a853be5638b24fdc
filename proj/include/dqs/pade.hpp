#pragma once

#include <vector>

#include "dqs/series.hpp"

namespace dqs {

// Rational approximant num/den matching a source series through order L+M,
// with den normalized to constant term 1.
struct Pade {
    std::vector<Rational> num;  // degree L
    std::vector<Rational> den;  // degree M, den[0] == 1
};

// Exact solve of the linear Pade system. Throws
// std::domain_error("degenerate Pade block") when the system is singular;
// callers reduce the degrees and retry.
Pade pade_fit(const Series& s, long L, long M);

Series pade_expand(const Pade& p, long order);
Rational pade_eval(const Pade& p, const Rational& x);

}  // namespace dqs
