#include "dqs/gfpipeline.hpp"

#include <iostream>
#include <stdexcept>

#include "dqs/dyck.hpp"

namespace dqs {

namespace {

struct DefectParts {
    Series A;  // 1/P - 1
    Series U;  // t P^2 / (1 - 2P)^2
};

DefectParts defect_args(const Series& P, long ord) {
    const Series Pt = P.truncated(ord);
    DefectParts d{inverse(Pt) - Rational(1), Series(0)};
    const Series one_minus_2p = Rational(1) - Rational(2) * Pt;
    const Series p2 = Pt * Pt;
    d.U = (p2 * inverse(one_minus_2p * one_minus_2p)).shifted_up(1).truncated(ord);
    return d;
}

Series defect(const QSeries& q, const Series& P, long ord) {
    const DefectParts args = defect_args(P, ord);
    Series e = series_compose(std::span<const CornerPoly>(q.polys.data(), q.polys.size()),
                              args.A, args.U, ord);
    e -= Rational(2) * P.truncated(ord);
    e += Series::constant(1, ord);
    return e;
}

// d/dP of the defect, through the requested order: the outer family enters
// through both arguments,
//   E'(P) = Q_a * (-1/P^2) + Q_u * 2tP/(1-2P)^3 - 2.
Series defect_derivative(const QSeries& q, const Series& P, long ord) {
    const Series Pt = P.truncated(ord);
    const DefectParts args = defect_args(P, ord);

    std::vector<CornerPoly> outer_da(q.polys.size());
    for (size_t i = 0; i < q.polys.size(); ++i) outer_da[i] = q.polys[i].derivative();
    std::vector<CornerPoly> outer_du;
    if (q.polys.size() > 1) {
        outer_du.resize(q.polys.size() - 1);
        for (size_t i = 0; i + 1 < q.polys.size(); ++i) {
            std::vector<BigInt> scaled(q.polys[i + 1].coeffs());
            for (auto& c : scaled) c *= static_cast<long>(i + 1);
            outer_du[i] = CornerPoly(std::move(scaled));
        }
    }

    const Series qa = series_compose(std::span<const CornerPoly>(outer_da.data(), outer_da.size()),
                                     args.A, args.U, ord);
    const Series qu = series_compose(std::span<const CornerPoly>(outer_du.data(), outer_du.size()),
                                     args.A, args.U, ord);

    const Series da_dp = -inverse(Pt * Pt);
    const Series one_minus_2p = Rational(1) - Rational(2) * Pt;
    const Series du_dp =
        (Rational(2) * Pt * inverse(one_minus_2p * one_minus_2p * one_minus_2p))
            .shifted_up(1)
            .truncated(ord);
    return qa * da_dp + qu * du_dp - Series::constant(2, ord);
}

Series solve_p_layer(const QSeries& q, long N, bool progress) {
    Series P = Series::constant(1, N);
    for (long n = 1; n <= N; ++n) {
        const Series e = defect(q, P.truncated(n), n);
        P.coeff(n) = e[n] / 2;
        if (progress && n % 16 == 0) std::cerr << "solve(layer): order " << n << "/" << N << "\n";
    }
    if (!defect(q, P, N).is_zero()) throw std::runtime_error("solver degeneracy");
    return P;
}

Series solve_p_newton(const QSeries& q, long N, bool progress) {
    Series P = Series::constant(1, 0);
    long m = 0;  // P is correct through order m
    while (m < N) {
        const long m2 = std::min(2 * m + 1, N);
        const Series Pw = pad(P, m2);
        const Series e = defect(q, Pw, m2);
        const long dord = std::max<long>(0, m2 - (m + 1));
        const Series eprime = defect_derivative(q, Pw.truncated(dord), dord);
        if (eprime[0] == 0) throw std::runtime_error("solver degeneracy");
        // e has valuation >= m+1; divide with the short derivative series.
        const Series delta =
            (div(e.shifted_down(m + 1), eprime)).shifted_up(m + 1).truncated(m2);
        P = Pw - delta;
        m = m2;
        if (progress) std::cerr << "solve(newton): order " << m << "/" << N << "\n";
    }
    return P;
}

}  // namespace

Series solve_P(const QSeries& q, long N, const SolveOptions& opt) {
    if (q.order() < N) throw std::invalid_argument("corner polynomials shorter than target order");
    Series P = (opt.strategy == SolveStrategy::layer) ? solve_p_layer(q, N, opt.progress)
                                                      : solve_p_newton(q, N, opt.progress);
    if (!P.integral())
        throw std::logic_error("solved series has a non-integer coefficient; upstream bug");
    return P;
}

Series derive_D(const Series& P) {
    const long N = P.order();
    if (P[0] != 1) throw std::invalid_argument("P must have constant term 1");
    const Series p2 = P * P;
    Series rad = Series::constant(1, N);
    rad -= Rational(4) * P;
    rad += Rational(4) * p2;
    rad -= Rational(8) * p2.shifted_up(1).truncated(N);
    rad += Rational(4) * p2.shifted_up(2).truncated(N);
    rad -= Rational(4) * P.shifted_up(1).truncated(N);
    const Series root = series_sqrt(rad);

    Series two_d = Series::constant(2, N);
    if (N >= 1) two_d.coeff(1) += 1;
    two_d += Rational(2) * P.shifted_up(1).truncated(N);
    two_d -= Rational(2) * P.shifted_up(2).truncated(N);
    two_d -= root.shifted_up(1).truncated(N);
    const Series D = Rational(1, 2) * two_d;
    if (!D.integral())
        throw std::logic_error("derived series has a non-integer coefficient; upstream bug");
    return D;
}

GFBundle compute_bundle(const QSeries& q, long N, const SolveOptions& opt) {
    GFBundle b{Series(0), Series(0), Series(0), N};
    b.P = solve_P(q, N, opt);
    b.D = derive_D(b.P);
    b.p = Rational(1) - inverse(b.P);
    return b;
}

namespace {

IdentityCheck first_difference(const Series& lhs, const Series& rhs) {
    IdentityCheck c;
    const long n = std::min(lhs.order(), rhs.order());
    for (long i = 0; i <= n; ++i) {
        if (lhs[i] != rhs[i]) {
            c.ok = false;
            c.first_fail = i;
            return c;
        }
    }
    return c;
}

}  // namespace

IdentityCheck verify_SinR(const Series& P, const Series& D) {
    const long N = std::min(P.order(), D.order());
    const Series Pt = P.truncated(N), Dt = D.truncated(N);
    const Series lhs =
        Pt * (Rational(2) * (Dt - Rational(1) - Dt.shifted_up(1).truncated(N)).shifted_up(1).truncated(N));
    Series d_minus_t_minus_1 = Dt - Rational(1);
    if (N >= 1) d_minus_t_minus_1.coeff(1) -= 1;
    const Series rhs = (Dt - Rational(1)) * d_minus_t_minus_1;
    return first_difference(lhs, rhs);
}

IdentityCheck verify_TRS(const Series& P, const Series& D) {
    const long N = std::min(P.order(), D.order());
    const Series Pt = P.truncated(N), Dt = D.truncated(N);
    const Series inv_p = inverse(Pt);
    const Series a = inv_p - Rational(1);
    const Series one_minus_2p = Rational(1) - Rational(2) * Pt;
    const Series u = (Pt * Pt * inverse(one_minus_2p * one_minus_2p)).shifted_up(1).truncated(N);
    const Series x = Series::constant(2, N) - inv_p;

    // Discriminant 1 - 12u + 4u^2 - 4au + 4a^2u^2 - 8au^2 with series a, u.
    const Series u2 = u * u;
    Series disc = Series::constant(1, N);
    disc -= Rational(12) * u;
    disc += Rational(4) * u2;
    disc -= Rational(4) * (a * u);
    disc += Rational(4) * (a * a * u2);
    disc -= Rational(8) * (a * u2);
    const Series root = series_sqrt(disc);

    const Series xu = x * u;
    const Series xau = x * a * u;
    const Series xroot = x * root;
    const Series four = Series::constant(4, N);
    const Series lhs_num = four + Rational(2) * xu - Rational(2) * xau - x + xroot;
    const Series lhs_den = four - Rational(2) * xu - Rational(2) * xau - x + xroot;
    const Series lhs = div(lhs_num, lhs_den);

    const Series rhs = div((Rational(2) * Pt - Rational(1)) * Dt, Dt * Pt + Pt - Dt);
    return first_difference(lhs, rhs);
}

Series evaluate_m(const MTable& m, const Series& A, const Series& U, const Series& X, long N) {
    if (N > m.half_len_max)
        throw std::invalid_argument("M table too short for the requested order");
    if (U[0] != 0) throw std::domain_error("composition requires positive valuation");

    int max_q = 0, max_r = 0;
    for (const auto& per_m : m.table)
        for (const auto& [key, cnt] : per_m) {
            max_q = std::max(max_q, key.first);
            max_r = std::max(max_r, key.second);
        }

    std::vector<Series> apow{Series::constant(1, N)}, xpow{Series::constant(1, N)},
        upow{Series::constant(1, N)};
    for (int i = 1; i <= max_q; ++i) apow.push_back(apow.back() * A.truncated(N));
    for (int i = 1; i <= max_r; ++i) xpow.push_back(xpow.back() * X.truncated(N));
    for (int i = 1; i <= m.half_len_max; ++i) upow.push_back(upow.back() * U.truncated(N));

    Series acc(N);
    for (size_t hm = 0; hm < m.table.size(); ++hm) {
        for (const auto& [key, cnt] : m.table[hm]) {
            const Series term = apow[static_cast<size_t>(key.first)] *
                                xpow[static_cast<size_t>(key.second)] * upow[hm];
            acc += Rational(cnt) * term;
        }
    }
    return acc;
}

IdentityCheck verify_M_relation(const MTable& m, const Series& P, const Series& D, long N) {
    const Series Pt = P.truncated(N), Dt = D.truncated(N);
    const Series A = Series::constant(1, N) - inverse(Pt);
    const Series U = (Pt * Pt).shifted_up(1).truncated(N);
    const Series X = Series::constant(1, N);
    const Series mhat = evaluate_m(m, A, U, X, N);
    // D = M(...) D / P + 1  <=>  D P = M(...) D + P
    return first_difference(Dt * Pt, mhat * Dt + Pt);
}

IdentityCheck verify_M_closed_form(const MTable& m, const Rational& a, const Rational& x, long N) {
    const Series Q = q_at(a, N);
    const Series Q1 = q1_series(a, x, N);
    const Series T = t_series(a, x, N);
    const Series inv_q = inverse(Q);
    const Series A = Series::constant(1, N) + (a - 1) * inv_q;
    const Series U = (Q * Q).shifted_up(1).truncated(N);
    const Series X = Q1 * inv_q * x;
    const Series mhat = evaluate_m(m, A, U, X, N);
    // T = M(...) T / Q + 1  <=>  T Q = M(...) T + Q
    return first_difference(T * Q, mhat * T + Q);
}

namespace {

Series variant_rhs(VariantRhs rhs, const Series& p, long ord) {
    switch (rhs) {
        case VariantRhs::printed: {  // 2p - 1
            return Rational(2) * p.truncated(ord) - Rational(1);
        }
        case VariantRhs::sign_flipped: {  // 1 - 2p
            return Rational(1) - Rational(2) * p.truncated(ord);
        }
        case VariantRhs::cor_s: {  // (1 + p) / (1 - p)
            return div(Rational(1) + p.truncated(ord), Rational(1) - p.truncated(ord));
        }
    }
    throw std::logic_error("unreachable");
}

Series variant_defect(const QSeries& q, VariantSub sub, VariantRhs rhs, const Series& p,
                      long ord) {
    const Series pt = p.truncated(ord);
    const Series s = (sub == VariantSub::one_minus_p) ? (Rational(1) - pt) : (Rational(1) + pt);
    const Series U = inverse(s * s).shifted_up(1).truncated(ord);
    const Series A = -pt;
    Series g = series_compose(std::span<const CornerPoly>(q.polys.data(), q.polys.size()), A, U,
                              ord);
    g -= variant_rhs(rhs, pt, ord);
    return g;
}

}  // namespace

VariantOutcome solve_variant(const QSeries& q, long N, VariantSub sub, VariantRhs rhs,
                             const Series& reference_p) {
    VariantOutcome out;
    out.sub = sub;
    out.rhs = rhs;

    // Constant-term solvability: the u argument vanishes at t = 0, so the
    // equation there reads 1 = rhs(p0). Only rhs with rhs(0) = 1 admit a
    // series root with p(0) = 0.
    const Rational rhs_at_zero = (rhs == VariantRhs::printed) ? Rational(-1) : Rational(1);
    if (rhs_at_zero != 1) {
        out.has_root = false;
        out.note = "no series root: at t=0 the equation forces p(0) != 0";
        return out;
    }

    const Rational slope = (rhs == VariantRhs::sign_flipped) ? Rational(2) : Rational(-2);
    Series p = Series::constant(0, N);
    for (long n = 1; n <= N; ++n) {
        const Series g = variant_defect(q, sub, rhs, p.truncated(n), n);
        p.coeff(n) = -g[n] / slope;
    }
    out.has_root = true;
    out.p = p;
    out.first_divergence = -1;
    const long common = std::min(N, reference_p.order());
    for (long i = 0; i <= common; ++i) {
        if (p[i] != reference_p[i]) {
            out.first_divergence = i;
            break;
        }
    }
    return out;
}

std::vector<VariantOutcome> variant_study(const QSeries& q, long N) {
    Series reference = Rational(1) - inverse(solve_P(q, N, {}));
    std::vector<VariantOutcome> outcomes;
    for (VariantSub sub : {VariantSub::one_minus_p, VariantSub::one_plus_p})
        for (VariantRhs rhs : {VariantRhs::printed, VariantRhs::sign_flipped, VariantRhs::cor_s})
            outcomes.push_back(solve_variant(q, N, sub, rhs, reference));
    return outcomes;
}

}  // namespace dqs
