#include "dqs/loops.hpp"

#include <functional>
#include <iostream>
#include <stdexcept>
#include <thread>

#include "dqs/machines.hpp"  // ResourceLimitError

namespace dqs {

// The layer recurrence. With s(n,k,x,y) the walk count, conditioning on the
// last step gives the four one-step terms; appending W to a walk that ended
// with N (or S to one that ended with E) creates one new weighted corner,
// which the two-step terms add back with corner index k-1 and remove with
// index k:
//
//   s(n,k,x,y) = s(n-1,k,x-1,y) + s(n-1,k,x,y-1)
//              + s(n-1,k,x+1,y) + s(n-1,k,x,y+1)
//              + s(n-2,k-1,x+1,y-1) - s(n-2,k,x+1,y-1)
//              + s(n-2,k-1,x-1,y+1) - s(n-2,k,x-1,y+1)
//
// Every reference with a negative n, k, x or y is zero, and x,y >= 0 is
// enforced by the state space. Walk counts are symmetric under x <-> y
// (reflection swaps N<->E and S<->W, exchanging NW and ES corners), so the
// streaming engine stores only the x >= y half of each layer.

namespace {

// Dense indexing of {(x,y): x >= y >= 0, x+y <= m, x+y == m (mod 2)}.
struct LayerShape {
    int m = -1;
    std::vector<long> diag_offset;  // by d = x+y (same parity as m)
    long size = 0;

    explicit LayerShape(int m_) : m(m_) {
        diag_offset.assign(static_cast<size_t>(m) + 1, -1);
        long off = 0;
        for (int d = m % 2; d <= m; d += 2) {
            diag_offset[static_cast<size_t>(d)] = off;
            off += d / 2 + 1;  // x from ceil(d/2) to d
        }
        size = off;
    }

    // Index of (x,y) with x >= y; -1 when outside the layer.
    long index(int x, int y) const {
        const int d = x + y;
        if (d > m) return -1;
        const long off = diag_offset[static_cast<size_t>(d)];
        if (off < 0) return -1;  // parity mismatch never happens for real neighbours
        return off + (x - (d + 1) / 2);
    }
};

using Poly = std::vector<BigInt>;  // coefficient k = count with k corners

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Streaming two-layer engine over k-resolved cells.
class PolyEngine {
public:
    PolyEngine(long n_max, long k_cap, BuildOptions opt)
        : n_max_(n_max), k_cap_(k_cap), opt_(opt) {}

    // Runs the build, invoking sink(n, poly at origin) at every even layer 2n.
    void run(const std::function<void(long, Poly&&)>& sink) {
        const int last = static_cast<int>(2 * n_max_);
        std::vector<Poly> prev2, prev1;
        prev1.assign(1, Poly{BigInt(1)});  // layer 0
        sink(0, Poly{BigInt(1)});
        LayerShape shape_prev2(0), shape_prev1(0);

        for (int m = 1; m <= last; ++m) {
            LayerShape shape(m);
            std::vector<Poly> cur(static_cast<size_t>(shape.size));
            const long cap = cap_at(m);

            auto worker = [&](long lo, long hi) {
                for (long d = m % 2; d <= m; d += 2) {
                    const long base = shape.diag_offset[static_cast<size_t>(d)];
                    const long cnt = d / 2 + 1;
                    if (base + cnt <= lo || base >= hi) continue;
                    for (int x = static_cast<int>((d + 1) / 2); x <= d; ++x) {
                        const long idx = shape.index(x, static_cast<int>(d) - x);
                        if (idx < lo || idx >= hi) continue;
                        cur[static_cast<size_t>(idx)] =
                            combine(shape_prev1, prev1, shape_prev2, prev2, x,
                                    static_cast<int>(d) - x, cap);
                    }
                }
            };

            const int nt = std::max(1, opt_.threads);
            if (nt == 1 || shape.size < 256) {
                worker(0, shape.size);
            } else {
                std::vector<std::thread> pool;
                const long chunk = (shape.size + nt - 1) / nt;
                for (int t = 0; t < nt; ++t) {
                    const long lo = t * chunk, hi = std::min<long>(shape.size, lo + chunk);
                    if (lo < hi) pool.emplace_back(worker, lo, hi);
                }
                for (auto& th : pool) th.join();
            }

            if (m % 2 == 0) {
                const long idx = shape.index(0, 0);
                Poly origin = cur[static_cast<size_t>(idx)];
                sink(m / 2, std::move(origin));
            }
            if (opt_.progress && (m % 25 == 0 || m == last))
                std::cerr << "loops: layer " << m << "/" << last << " (" << shape.size
                          << " cells)\n";

            prev2 = std::move(prev1);
            shape_prev2 = shape_prev1;
            prev1 = std::move(cur);
            shape_prev1 = shape;
        }
    }

private:
    long n_max_, k_cap_;
    BuildOptions opt_;

    long cap_at(int m) const {
        const long natural = m / 2;
        if (k_cap_ < 0) return natural;
        return std::min(natural, k_cap_ - (m + 1) / 2);
    }

    static const Poly* fetch(const LayerShape& shape, const std::vector<Poly>& layer, int x,
                             int y) {
        if (x < 0 || y < 0) return nullptr;
        if (x < y) std::swap(x, y);
        const long idx = shape.index(x, y);
        if (idx < 0) return nullptr;
        return &layer[static_cast<size_t>(idx)];
    }

    static Poly combine(const LayerShape& s1, const std::vector<Poly>& l1, const LayerShape& s2,
                        const std::vector<Poly>& l2, int x, int y, long cap) {
        Poly acc;
        acc.reserve(static_cast<size_t>(cap) + 1);
        auto add_one_step = [&](int xx, int yy) {
            const Poly* p = fetch(s1, l1, xx, yy);
            if (!p) return;
            const size_t kmax = std::min<size_t>(p->size(), static_cast<size_t>(cap) + 1);
            if (acc.size() < kmax) acc.resize(kmax);
            for (size_t k = 0; k < kmax; ++k) acc[k] += (*p)[k];
        };
        add_one_step(x - 1, y);
        add_one_step(x, y - 1);
        add_one_step(x + 1, y);
        add_one_step(x, y + 1);

        auto add_corner = [&](int xx, int yy) {
            const Poly* p = fetch(s2, l2, xx, yy);
            if (!p) return;
            // contributes (a - 1) * p: index k gains p[k-1] - p[k]
            const size_t top = std::min<size_t>(p->size() + 1, static_cast<size_t>(cap) + 1);
            if (acc.size() < top) acc.resize(top);
            for (size_t k = 0; k < top; ++k) {
                if (k > 0 && k - 1 < p->size()) acc[k] += (*p)[k - 1];
                if (k < p->size()) acc[k] -= (*p)[k];
            }
        };
        add_corner(x + 1, y - 1);
        add_corner(x - 1, y + 1);
        trim(acc);
        return acc;
    }
};

// Streaming engine with a specialized to a fixed rational.
class ValueEngine {
public:
    ValueEngine(const Rational& a, long n_max, BuildOptions opt)
        : corner_(a - 1), n_max_(n_max), opt_(opt) {}

    void run(const std::function<void(long, Rational&&)>& sink) {
        const int last = static_cast<int>(2 * n_max_);
        std::vector<Rational> prev2, prev1;
        prev1.assign(1, Rational(1));
        sink(0, Rational(1));
        LayerShape shape_prev2(0), shape_prev1(0);

        for (int m = 1; m <= last; ++m) {
            LayerShape shape(m);
            std::vector<Rational> cur(static_cast<size_t>(shape.size), Rational(0));

            auto worker = [&](long lo, long hi) {
                for (long d = m % 2; d <= m; d += 2) {
                    const long base = shape.diag_offset[static_cast<size_t>(d)];
                    const long cnt = d / 2 + 1;
                    if (base + cnt <= lo || base >= hi) continue;
                    for (int x = static_cast<int>((d + 1) / 2); x <= d; ++x) {
                        const long idx = shape.index(x, static_cast<int>(d) - x);
                        if (idx < lo || idx >= hi) continue;
                        const int y = static_cast<int>(d) - x;
                        Rational acc(0);
                        auto one = [&](int xx, int yy) {
                            const Rational* p = fetch(shape_prev1, prev1, xx, yy);
                            if (p) acc += *p;
                        };
                        one(x - 1, y);
                        one(x, y - 1);
                        one(x + 1, y);
                        one(x, y + 1);
                        auto corner = [&](int xx, int yy) {
                            const Rational* p = fetch(shape_prev2, prev2, xx, yy);
                            if (p && *p != 0) acc += corner_ * (*p);
                        };
                        corner(x + 1, y - 1);
                        corner(x - 1, y + 1);
                        cur[static_cast<size_t>(idx)] = std::move(acc);
                    }
                }
            };

            const int nt = std::max(1, opt_.threads);
            if (nt == 1 || shape.size < 256) {
                worker(0, shape.size);
            } else {
                std::vector<std::thread> pool;
                const long chunk = (shape.size + nt - 1) / nt;
                for (int t = 0; t < nt; ++t) {
                    const long lo = t * chunk, hi = std::min<long>(shape.size, lo + chunk);
                    if (lo < hi) pool.emplace_back(worker, lo, hi);
                }
                for (auto& th : pool) th.join();
            }

            if (m % 2 == 0) sink(m / 2, Rational(cur[static_cast<size_t>(shape.index(0, 0))]));
            if (opt_.progress && (m % 50 == 0 || m == last))
                std::cerr << "loops(a): layer " << m << "/" << last << "\n";

            prev2 = std::move(prev1);
            shape_prev2 = shape_prev1;
            prev1 = std::move(cur);
            shape_prev1 = shape;
        }
    }

private:
    Rational corner_;
    long n_max_;
    BuildOptions opt_;

    static const Rational* fetch(const LayerShape& shape, const std::vector<Rational>& layer,
                                 int x, int y) {
        if (x < 0 || y < 0) return nullptr;
        if (x < y) std::swap(x, y);
        const long idx = shape.index(x, y);
        if (idx < 0) return nullptr;
        return &layer[static_cast<size_t>(idx)];
    }
};

}  // namespace

const BigInt& SmallLoopTable::cell(int n, int k, int x, int y) const {
    static const BigInt zero = 0;
    const int span = max_steps_ + 1;
    const int kspan = max_steps_ / 2 + 1;
    if (n < 0 || n > max_steps_ || k < 0 || k >= kspan || x < 0 || x >= span || y < 0 ||
        y >= span)
        return zero;
    return layers_[static_cast<size_t>(n)][(static_cast<size_t>(k) * span + x) * span + y];
}

BigInt& SmallLoopTable::cell_mut(int n, int k, int x, int y) {
    const int span = max_steps_ + 1;
    return layers_[static_cast<size_t>(n)][(static_cast<size_t>(k) * span + x) * span + y];
}

const BigInt& SmallLoopTable::count(int n, int k, int x, int y) const {
    return cell(n, k, x, y);
}

SmallLoopTable SmallLoopTable::build(int max_steps) {
    SmallLoopTable t;
    t.max_steps_ = max_steps;
    const size_t span = static_cast<size_t>(max_steps) + 1;
    const size_t kspan = static_cast<size_t>(max_steps) / 2 + 1;
    t.layers_.assign(static_cast<size_t>(max_steps) + 1,
                     std::vector<BigInt>(kspan * span * span, BigInt(0)));
    t.cell_mut(0, 0, 0, 0) = 1;
    for (int n = 1; n <= max_steps; ++n) {
        for (int k = 0; 2 * k <= n; ++k) {
            for (int x = 0; x <= n; ++x) {
                for (int y = 0; y <= n - x; ++y) {
                    if ((x + y) % 2 != n % 2) continue;
                    BigInt acc = t.cell(n - 1, k, x - 1, y);
                    acc += t.cell(n - 1, k, x, y - 1);
                    acc += t.cell(n - 1, k, x + 1, y);
                    acc += t.cell(n - 1, k, x, y + 1);
                    if (n >= 2) {
                        acc += t.cell(n - 2, k - 1, x + 1, y - 1);
                        acc -= t.cell(n - 2, k, x + 1, y - 1);
                        acc += t.cell(n - 2, k - 1, x - 1, y + 1);
                        acc -= t.cell(n - 2, k, x - 1, y + 1);
                    }
                    t.cell_mut(n, k, x, y) = acc;
                }
            }
        }
    }
    return t;
}

namespace {

void brute_walk(int max_steps, int x, int y, int last, int corners, int depth, BigInt* cells,
                int span, int kspan) {
    // last: 0=N 1=E 2=S 3=W, -1 at the start
    if (depth > 0) {
        BigInt& c = cells[((static_cast<size_t>(depth) * kspan + corners) * span + x) * span + y];
        c += 1;
    }
    if (depth == max_steps) return;
    static const int dx[4] = {0, 1, 0, -1};
    static const int dy[4] = {1, 0, -1, 0};
    for (int s = 0; s < 4; ++s) {
        const int nx = x + dx[s], ny = y + dy[s];
        if (nx < 0 || ny < 0) continue;
        // weighted corners: N then W, or E then S
        const int add = ((last == 0 && s == 3) || (last == 1 && s == 2)) ? 1 : 0;
        brute_walk(max_steps, nx, ny, s, corners + add, depth + 1, cells, span, kspan);
    }
}

}  // namespace

SmallLoopTable SmallLoopTable::brute_force(int max_steps) {
    if (max_steps > 12) throw ResourceLimitError("oracle scale exceeded");
    SmallLoopTable t;
    t.max_steps_ = max_steps;
    const int span = max_steps + 1;
    const int kspan = max_steps / 2 + 1;
    t.layers_.assign(static_cast<size_t>(max_steps) + 1,
                     std::vector<BigInt>(static_cast<size_t>(kspan) * span * span, BigInt(0)));
    t.cell_mut(0, 0, 0, 0) = 1;

    // One pass records every depth; flatten layer storage for the walker.
    std::vector<BigInt> cells(static_cast<size_t>(max_steps + 1) * kspan * span * span,
                              BigInt(0));
    brute_walk(max_steps, 0, 0, -1, 0, 0, cells.data(), span, kspan);
    for (int n = 1; n <= max_steps; ++n)
        for (int k = 0; k < kspan; ++k)
            for (int x = 0; x < span; ++x)
                for (int y = 0; y < span; ++y)
                    t.cell_mut(n, k, x, y) = cells[((static_cast<size_t>(n) * kspan + k) * span +
                                                    x) * span + y];
    return t;
}

namespace {

QSeries q_series_impl(long n_max, long k_cap, const BuildOptions& opt) {
    QSeries q;
    q.k_cap = k_cap;
    q.polys.resize(static_cast<size_t>(n_max) + 1);
    PolyEngine engine(n_max, k_cap, opt);
    engine.run([&](long n, Poly&& p) { q.polys[static_cast<size_t>(n)] = CornerPoly(std::move(p)); });
    return q;
}

}  // namespace

QSeries q_series(long n_max, const BuildOptions& opt) { return q_series_impl(n_max, -1, opt); }

QSeries q_series_capped(long n_max, const BuildOptions& opt) {
    return q_series_impl(n_max, n_max, opt);
}

Series q_at(const Rational& a, long n_max, const BuildOptions& opt) {
    Series s(n_max);
    ValueEngine engine(a, n_max, opt);
    engine.run([&](long n, Rational&& v) { s.coeff(n) = std::move(v); });
    return s;
}

Series q1_series(const Rational& a, const Rational& x, long n_max, const BuildOptions& opt) {
    const Series q = q_at(a, n_max, opt);
    const Series den = Rational(2) * q - x * q + x;
    if (den[0] == 0) throw std::domain_error("non-invertible series");
    return div(Rational(2) * q, den);
}

Series u_series(const Rational& a, long n_max, const BuildOptions& opt) {
    const Series q = q_at(a, n_max, opt);
    return Rational(1) - inverse(q);
}

Series q_series_eval(const QSeries& q, const Rational& a) {
    Series s(q.order());
    for (long n = 0; n <= q.order(); ++n) s.coeff(n) = q.polys[static_cast<size_t>(n)].eval(a);
    return s;
}

PositivityReport check_a_plus_one_positivity(const QSeries& q, long n_max) {
    PositivityReport r;
    if (q.k_cap >= 0) throw std::invalid_argument("positivity check needs full corner polynomials");
    const long top = std::min(n_max, q.order());
    for (long n = 0; n <= top; ++n) {
        const auto shifted = q.polys[static_cast<size_t>(n)].shifted_basis_coeffs();
        for (size_t j = 0; j < shifted.size(); ++j) {
            if (shifted[j] < 0) {
                r.positive = false;
                r.first_n = n;
                r.first_power = static_cast<long>(j);
                return r;
            }
        }
    }
    return r;
}

}  // namespace dqs
