#include "dqs/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dqs {

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto check_int = [](const std::string& s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!check_int(text)) throw std::invalid_argument("malformed integer literal: " + text);
        return Rational(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!check_int(num) || !check_int(den) || den[0] == '-')
        throw std::invalid_argument("malformed rational literal: " + text);
    BigInt d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    Rational q(BigInt(num), d);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) throw std::domain_error("square root of negative rational");
    BigInt num_root, den_root;
    if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) ||
        !mpz_perfect_square_p(q.get_den().get_mpz_t()))
        throw std::domain_error("constant term is not a rational square");
    mpz_sqrt(num_root.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(den_root.get_mpz_t(), q.get_den().get_mpz_t());
    return Rational(num_root, den_root);
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt catalan(unsigned long n) {
    BigInt r = binomial(2 * n, n);
    r /= static_cast<unsigned long>(n + 1);
    return r;
}

Series::Series(long order) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
    c_.assign(static_cast<size_t>(order) + 1, Rational(0));
}

Series::Series(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("series needs at least the constant term");
}

Series Series::constant(const Rational& value, long order) {
    Series s(order);
    s.c_[0] = value;
    return s;
}

Series Series::variable(long order) {
    Series s(order);
    if (order < 1) throw std::invalid_argument("variable needs order >= 1");
    s.c_[1] = 1;
    return s;
}

Series Series::polynomial(std::initializer_list<long> coeffs, long order) {
    std::vector<Rational> v;
    v.reserve(coeffs.size());
    for (long c : coeffs) v.emplace_back(c);
    return polynomial(std::move(v), order);
}

Series Series::polynomial(std::vector<Rational> coeffs, long order) {
    if (static_cast<long>(coeffs.size()) > order + 1)
        throw std::invalid_argument("polynomial longer than requested order");
    Series s(order);
    for (size_t i = 0; i < coeffs.size(); ++i) s.c_[i] = std::move(coeffs[i]);
    return s;
}

long Series::valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<long>(i);
    return order() + 1;
}

bool Series::is_zero() const { return valuation() > order(); }

bool Series::integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return is_integer(q); });
}

Series Series::truncated(long new_order) const {
    if (new_order > order()) throw std::invalid_argument("cannot extend a truncated series");
    if (new_order == order()) return *this;
    Series s(new_order);
    std::copy(c_.begin(), c_.begin() + new_order + 1, s.c_.begin());
    return s;
}

Series Series::shifted_up(long k) const {
    Series s(order() + k);
    std::copy(c_.begin(), c_.end(), s.c_.begin() + k);
    return s;
}

Series Series::shifted_down(long k) const {
    if (k > order()) throw std::invalid_argument("shift exceeds order");
    for (long i = 0; i < k; ++i)
        if (c_[static_cast<size_t>(i)] != 0)
            throw std::domain_error("series not divisible by the requested monomial");
    Series s(order() - k);
    std::copy(c_.begin() + k, c_.end(), s.c_.begin());
    return s;
}

Series Series::derivative() const {
    if (order() == 0) return Series(0);
    Series s(order() - 1);
    for (long i = 1; i <= order(); ++i) s.c_[static_cast<size_t>(i - 1)] = Rational(i) * c_[static_cast<size_t>(i)];
    return s;
}

Series Series::operator-() const {
    Series s = *this;
    for (auto& q : s.c_) q = -q;
    return s;
}

Series& Series::operator+=(const Series& rhs) { return *this = *this + rhs; }
Series& Series::operator-=(const Series& rhs) { return *this = *this - rhs; }

Series operator+(const Series& a, const Series& b) {
    const long n = std::min(a.order(), b.order());
    Series s(n);
    for (long i = 0; i <= n; ++i) s.c_[static_cast<size_t>(i)] = a[i] + b[i];
    return s;
}

Series operator-(const Series& a, const Series& b) {
    const long n = std::min(a.order(), b.order());
    Series s(n);
    for (long i = 0; i <= n; ++i) s.c_[static_cast<size_t>(i)] = a[i] - b[i];
    return s;
}

Series operator*(const Series& a, const Series& b) {
    const long n = std::min(a.order(), b.order());
    Series s(n);
    const long va = a.valuation(), vb = b.valuation();
    mpq_class tmp;
    for (long i = va; i <= n; ++i) {
        if (a[i] == 0) continue;
        const long jmax = n - i;
        for (long j = vb; j <= jmax; ++j) {
            if (b[j] == 0) continue;
            tmp = a[i] * b[j];
            s.c_[static_cast<size_t>(i + j)] += tmp;
        }
    }
    return s;
}

Series operator*(const Rational& s, const Series& a) {
    Series r = a;
    for (auto& q : r.c_) q *= s;
    return r;
}
Series operator*(const Series& a, const Rational& s) { return s * a; }

Series operator+(const Series& a, const Rational& s) {
    Series r = a;
    r.c_[0] += s;
    return r;
}
Series operator+(const Rational& s, const Series& a) { return a + s; }
Series operator-(const Series& a, const Rational& s) { return a + Rational(-s); }
Series operator-(const Rational& s, const Series& a) { return (-a) + s; }

bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

Series inverse(const Series& a) {
    if (a[0] == 0) throw std::domain_error("non-invertible series");
    const long n = a.order();
    Series r(n);
    const Rational inv0 = 1 / a[0];
    r.coeff(0) = inv0;
    for (long i = 1; i <= n; ++i) {
        Rational acc(0);
        for (long j = 1; j <= i; ++j) {
            if (a[j] == 0) continue;
            acc += a[j] * r[i - j];
        }
        r.coeff(i) = -acc * inv0;
    }
    return r;
}

Series div(const Series& a, const Series& b) {
    if (b[0] == 0) throw std::domain_error("non-invertible series");
    const long n = std::min(a.order(), b.order());
    Series q(n);
    const Rational inv0 = 1 / b[0];
    for (long i = 0; i <= n; ++i) {
        Rational acc = a[i];
        for (long j = 1; j <= i; ++j) {
            if (b[j] == 0) continue;
            acc -= b[j] * q[i - j];
        }
        q.coeff(i) = acc * inv0;
    }
    return q;
}

Series series_sqrt(const Series& a) {
    const Rational root0 = rational_sqrt(a[0]);
    const long n = a.order();
    Series r(n);
    r.coeff(0) = root0;
    const Rational twice0 = 2 * root0;
    if (twice0 == 0) throw std::domain_error("square root at zero constant term is not a series");
    for (long i = 1; i <= n; ++i) {
        Rational acc = a[i];
        for (long j = 1; j < i; ++j) acc -= r[j] * r[i - j];
        r.coeff(i) = acc / twice0;
    }
    return r;
}

Series pow(const Series& a, long n) {
    if (n < 0) throw std::invalid_argument("negative series power");
    Series result = Series::constant(1, a.order());
    Series base = a;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = (n > 1) ? base * base : base;
        n >>= 1;
    }
    return result;
}

Series pad(const Series& a, long order) {
    if (order <= a.order()) return a.truncated(order);
    Series s(order);
    for (long i = 0; i <= a.order(); ++i) s.coeff(i) = a[i];
    return s;
}

std::string to_string(const Series& a, long max_terms) {
    std::ostringstream os;
    const long n = (max_terms < 0) ? a.order() : std::min(a.order(), max_terms - 1);
    for (long i = 0; i <= n; ++i) {
        if (i) os << ' ';
        os << rational_to_string(a[i]);
    }
    return os.str();
}

}  // namespace dqs
