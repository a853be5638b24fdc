#include "dqs/pade.hpp"

#include <stdexcept>

namespace dqs {

namespace {

// Gaussian elimination over the rationals; returns false on a singular system.
bool solve_rational(std::vector<std::vector<Rational>>& m, std::vector<Rational>& rhs,
                    std::vector<Rational>& out) {
    const size_t n = m.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return false;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[col][col];
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    out.assign(n, Rational(0));
    for (size_t ri = n; ri-- > 0;) {
        Rational acc = rhs[ri];
        for (size_t c = ri + 1; c < n; ++c) acc -= m[ri][c] * out[c];
        out[ri] = acc / m[ri][ri];
    }
    return true;
}

}  // namespace

Pade pade_fit(const Series& s, long L, long M) {
    if (L < 0 || M < 0) throw std::invalid_argument("negative Pade degree");
    if (s.order() < L + M) throw std::invalid_argument("series shorter than L+M");

    Pade p;
    p.den.assign(static_cast<size_t>(M) + 1, Rational(0));
    p.den[0] = 1;
    if (M > 0) {
        // For j = L+1 .. L+M:  sum_{i=0..M} den[i] * s[j-i] = 0.
        std::vector<std::vector<Rational>> mat(static_cast<size_t>(M),
                                               std::vector<Rational>(static_cast<size_t>(M)));
        std::vector<Rational> rhs(static_cast<size_t>(M));
        for (long r = 0; r < M; ++r) {
            const long j = L + 1 + r;
            for (long i = 1; i <= M; ++i) {
                const long idx = j - i;
                mat[static_cast<size_t>(r)][static_cast<size_t>(i - 1)] =
                    (idx >= 0) ? s[idx] : Rational(0);
            }
            rhs[static_cast<size_t>(r)] = -s[j];
        }
        std::vector<Rational> b;
        if (!solve_rational(mat, rhs, b)) throw std::domain_error("degenerate Pade block");
        for (long i = 1; i <= M; ++i) p.den[static_cast<size_t>(i)] = b[static_cast<size_t>(i - 1)];
    }
    p.num.assign(static_cast<size_t>(L) + 1, Rational(0));
    for (long i = 0; i <= L; ++i) {
        Rational acc(0);
        for (long k = 0; k <= std::min(i, M); ++k) acc += p.den[static_cast<size_t>(k)] * s[i - k];
        p.num[static_cast<size_t>(i)] = acc;
    }
    return p;
}

Series pade_expand(const Pade& p, long order) {
    const long work = std::max({order, static_cast<long>(p.num.size()) - 1,
                                static_cast<long>(p.den.size()) - 1});
    Series num = Series::polynomial(p.num, work);
    Series den = Series::polynomial(p.den, work);
    return div(num, den).truncated(order);
}

Rational pade_eval(const Pade& p, const Rational& x) {
    auto horner = [&x](const std::vector<Rational>& c) {
        Rational acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    const Rational d = horner(p.den);
    if (d == 0) throw std::domain_error("Pade denominator vanishes at evaluation point");
    return horner(p.num) / d;
}

}  // namespace dqs
