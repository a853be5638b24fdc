#include "dqs/corner_poly.hpp"

#include <stdexcept>

namespace dqs {

namespace {
const BigInt kZero = 0;
}

CornerPoly::CornerPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigInt& CornerPoly::coeff(long k) const {
    if (k < 0 || k > degree()) return kZero;
    return c_[static_cast<size_t>(k)];
}

Rational CornerPoly::eval(const Rational& a) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * a + Rational(*it);
    return acc;
}

BigInt CornerPoly::eval_int(const BigInt& a) const {
    BigInt acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * a + *it;
    return acc;
}

BigInt CornerPoly::sum_of_coeffs() const {
    BigInt acc(0);
    for (const auto& c : c_) acc += c;
    return acc;
}

CornerPoly CornerPoly::derivative() const {
    if (c_.size() <= 1) return CornerPoly{};
    std::vector<BigInt> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = BigInt(static_cast<long>(k)) * c_[k];
    return CornerPoly(std::move(d));
}

std::vector<BigInt> CornerPoly::shifted_basis_coeffs() const {
    // p(a) = sum_j b_j (a+1)^j  with  b_j = sum_k c_k C(k,j) (-1)^(k-j).
    std::vector<BigInt> b(c_.size(), BigInt(0));
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        for (size_t j = 0; j <= k; ++j) {
            BigInt term = binomial(k, j) * c_[k];
            if ((k - j) & 1) term = -term;
            b[j] += term;
        }
    }
    while (!b.empty() && b.back() == 0) b.pop_back();
    return b;
}

CornerPoly operator+(const CornerPoly& p, const CornerPoly& q) {
    std::vector<BigInt> c(std::max(p.c_.size(), q.c_.size()), BigInt(0));
    for (size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
    for (size_t i = 0; i < q.c_.size(); ++i) c[i] += q.c_[i];
    return CornerPoly(std::move(c));
}

bool operator==(const CornerPoly& p, const CornerPoly& q) { return p.c_ == q.c_; }

Series series_compose(std::span<const CornerPoly> outer, const Series& argA,
                      const Series& argU, long N) {
    if (argU.order() >= 0 && argU[0] != 0)
        throw std::domain_error("composition requires positive valuation");
    if (argA[0] != 0)
        throw std::domain_error("composition requires positive valuation");
    if (argA.order() < N || argU.order() < N)
        throw std::invalid_argument("composition arguments shorter than requested order");

    const long n_top = std::min<long>(static_cast<long>(outer.size()) - 1, N);
    if (n_top < 0) return Series(N);

    long max_deg = 0;
    bool low_degree = true;  // outer[n] has degree <= n (holds for the loop polynomials)
    for (long n = 0; n <= n_top; ++n) {
        const long d = outer[static_cast<size_t>(n)].degree();
        max_deg = std::max(max_deg, d);
        if (d > n) low_degree = false;
    }
    max_deg = std::min(max_deg, N);  // argA^k has valuation >= k

    // Power table: pw[k] = argA^k. When every outer polynomial has degree at
    // most its index, pw[k] is only ever read through order N - k.
    std::vector<Series> pw;
    pw.reserve(static_cast<size_t>(max_deg) + 1);
    pw.push_back(Series::constant(1, N));
    for (long k = 1; k <= max_deg; ++k) {
        const long ord = low_degree ? N - k : N;
        pw.push_back((pw.back() * argA).truncated(ord));
    }

    // Horner in the u argument, shrinking the working order as we descend.
    auto inner = [&](long n, long ord) {
        Series acc(ord);
        const CornerPoly& p = outer[static_cast<size_t>(n)];
        const long kmax = std::min(p.degree(), ord);
        for (long k = 0; k <= kmax; ++k) {
            const BigInt& c = p.coeff(k);
            if (c == 0) continue;
            const Rational cr(c);
            const Series& ak = pw[static_cast<size_t>(k)];
            for (long i = k; i <= ord; ++i) {
                if (ak[i] == 0) continue;
                acc.coeff(i) += cr * ak[i];
            }
        }
        return acc;
    };

    Series result = inner(n_top, N - n_top);
    for (long n = n_top - 1; n >= 0; --n) {
        const long ord = N - n;
        Series grown(ord);
        for (long i = 1; i <= ord; ++i) {
            if (argU[i] == 0) continue;
            const long jmax = std::min(result.order(), ord - i);
            for (long j = 0; j <= jmax; ++j) {
                if (result[j] == 0) continue;
                grown.coeff(i + j) += argU[i] * result[j];
            }
        }
        grown += inner(n, ord);
        result = std::move(grown);
    }
    return result;
}

}  // namespace dqs
