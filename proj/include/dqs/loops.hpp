#pragma once

#include <optional>

#include "dqs/corner_poly.hpp"

namespace dqs {

struct BuildOptions {
    int threads = 1;
    bool progress = false;  // layer progress on stderr
};

// Full-retention corner-count table for small step counts: count(n,k,x,y) is
// the number of n-step quarter-plane walks from the origin to (x,y) with k
// weighted (NW or ES) corners. Entries are zero outside the stored range.
class SmallLoopTable {
public:
    // Fills layer by layer via the two-layer recurrence; every reference with
    // a negative index is zero and the state space enforces x,y >= 0.
    static SmallLoopTable build(int max_steps);
    // Direct walk enumeration, the independent oracle. max_steps <= 12.
    static SmallLoopTable brute_force(int max_steps);

    int max_steps() const { return max_steps_; }
    const BigInt& count(int n, int k, int x, int y) const;

private:
    int max_steps_ = 0;
    // layer n -> flattened (k, x, y) with k <= n/2, x,y <= n
    std::vector<std::vector<BigInt>> layers_;
    const BigInt& cell(int n, int k, int x, int y) const;
    BigInt& cell_mut(int n, int k, int x, int y);
    friend SmallLoopTable build_impl(int, bool);
};

// Coefficients of u^n in Q(a,u): the corner polynomials P_n(a).
struct QSeries {
    std::vector<CornerPoly> polys;
    // When >= 0, polys[n] is exact only through degree k_cap - n.
    long k_cap = -1;

    long order() const { return static_cast<long>(polys.size()) - 1; }
};

// Exact P_n(a) for n <= n_max (full corner resolution).
QSeries q_series(long n_max, const BuildOptions& opt = {});

// Pipeline build: P_n(a) exact through degree n_max - n, which is all the
// composition at order n_max ever reads. Far cheaper at large n_max.
QSeries q_series_capped(long n_max, const BuildOptions& opt = {});

// Q(a, u) at a fixed rational a, as a series in u through u^n_max.
Series q_at(const Rational& a, long n_max, const BuildOptions& opt = {});

// Q1(a,u,x) = 2Q / (2Q - xQ + x) at fixed rationals.
Series q1_series(const Rational& a, const Rational& x, long n_max, const BuildOptions& opt = {});

// U = 1 - 1/Q, the generating function of loops touching the origin only at
// their endpoints.
Series u_series(const Rational& a, long n_max, const BuildOptions& opt = {});

Series q_series_eval(const QSeries& q, const Rational& a);

struct PositivityReport {
    bool positive = true;
    long first_n = -1;      // first violating u-index, if any
    long first_power = -1;  // violating power of (a+1)
};

// Re-expands each P_n in powers of (a+1) and verifies nonnegativity.
PositivityReport check_a_plus_one_positivity(const QSeries& q, long n_max);

}  // namespace dqs
