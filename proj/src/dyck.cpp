#include "dqs/dyck.hpp"

#include <stdexcept>

#include "dqs/machines.hpp"  // ResourceLimitError

namespace dqs {

Series dyck_discriminant(const Rational& a, long n_max) {
    Series d = Series::constant(1, n_max);
    if (n_max >= 1) d.coeff(1) = -12 - 4 * a;
    if (n_max >= 2) d.coeff(2) = 4 + 4 * a * a - 8 * a;
    return d;
}

Series t2_series(const Rational& a, long n_max) {
    // Work one order higher: the numerator has valuation 1 and is divided by 8u.
    const long work = n_max + 1;
    const Series root = series_sqrt(dyck_discriminant(a, work));
    Series num = -root;
    num.coeff(0) += 1;
    num.coeff(1) += 2 - 2 * a;
    return (Rational(1, 8) * num.shifted_down(1));
}

Series t1_series(const Rational& a, const Rational& y, long n_max) {
    const Series root = series_sqrt(dyck_discriminant(a, n_max));
    Series den = y * root;
    den.coeff(0) += 4 - y;
    if (n_max >= 1) den.coeff(1) += 2 * y - 2 * y * a;
    if (den[0] == 0) throw std::domain_error("non-invertible series");
    return div(Series::constant(4 * y, n_max), den);
}

Series t_series(const Rational& a, const Rational& x, long n_max) {
    const Series root = series_sqrt(dyck_discriminant(a, n_max));
    Series num = x * root;
    num.coeff(0) += 4 - x;
    if (n_max >= 1) num.coeff(1) += 2 * x - 2 * x * a;
    Series den = x * root;
    den.coeff(0) += 4 - x;
    if (n_max >= 1) den.coeff(1) += -2 * x - 2 * x * a;
    if (den[0] == 0) throw std::domain_error("non-invertible series");
    return div(num, den);
}

namespace {

// step: +1 up / -1 down, colour: 0 red / 1 blue.
void dyck_dfs(int half_len_max, ColourRule rule, int height, int peaks, int marked, int depth,
              int last_dir, int last_colour, BicolouredTable& out) {
    if (height == 0 && depth % 2 == 0) {
        // A vertex statistic counts the closing endpoint too; record the
        // completed path of half-length depth/2 as it stands.
        ++out.table[static_cast<size_t>(depth / 2)][{peaks, marked}];
    }
    if (depth == 2 * half_len_max) return;
    if (height > 2 * half_len_max - depth) return;  // cannot close any further path
    for (int dir : {+1, -1}) {
        const int nh = height + dir;
        if (nh < 0) continue;
        for (int colour : {0, 1}) {
            if (rule == ColourRule::red_from_0 && height == 0 && colour != 0) continue;
            if (rule == ColourRule::red_from_0_or_1 && height <= 1 && colour != 0) continue;
            const int npeaks =
                peaks + ((last_dir == +1 && dir == -1 && colour != last_colour) ? 1 : 0);
            int nmarked = marked;
            if (rule == ColourRule::red_from_0 && nh == 0) ++nmarked;
            if (rule == ColourRule::red_from_0_or_1 && nh == 1) ++nmarked;
            dyck_dfs(half_len_max, rule, nh, npeaks, nmarked, depth + 1, dir, colour, out);
        }
    }
}

}  // namespace

BicolouredTable enumerate_bicoloured(int half_len_max, ColourRule rule) {
    if (half_len_max < 0 || half_len_max > 6) throw ResourceLimitError("oracle scale exceeded");
    BicolouredTable t;
    t.half_len_max = half_len_max;
    t.table.assign(static_cast<size_t>(half_len_max) + 1, {});
    // The initial vertex sits at height 0.
    const int start_marked = (rule == ColourRule::red_from_0) ? 1 : 0;
    dyck_dfs(half_len_max, rule, 0, 0, start_marked, 0, 0, 0, t);
    return t;
}

Series bicoloured_eval(const BicolouredTable& t, const Rational& a, const Rational& marker) {
    Series s(t.half_len_max);
    for (int m = 0; m <= t.half_len_max; ++m) {
        Rational acc(0);
        for (const auto& [key, cnt] : t.table[static_cast<size_t>(m)]) {
            Rational term(cnt);
            for (int i = 0; i < key.first; ++i) term *= a;
            for (int i = 0; i < key.second; ++i) term *= marker;
            acc += term;
        }
        s.coeff(m) = acc;
    }
    return s;
}

}  // namespace dqs
