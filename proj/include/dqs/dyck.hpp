#pragma once

#include <map>

#include "dqs/series.hpp"

namespace dqs {

// Closed-form series in u for bicoloured Dyck paths at rational weights.
// A multicoloured peak is an up-step followed by a down-step of the opposite
// colour; the weight a marks those peaks.

// The shared radicand 1 - 12u + 4u^2 - 4au + 4a^2u^2 - 8au^2.
Series dyck_discriminant(const Rational& a, long n_max);

// All bicoloured paths: (1 + 2u - 2au - sqrt(disc)) / (8u), the branch fixed
// by the constant term 1.
Series t2_series(const Rational& a, long n_max);

// Paths whose steps from height 0 are red; y marks vertices at height 0
// including the endpoints.
Series t1_series(const Rational& a, const Rational& y, long n_max);

// Paths whose steps from height 0 or 1 are red; x marks vertices at height 1.
Series t_series(const Rational& a, const Rational& x, long n_max);

enum class ColourRule { none, red_from_0, red_from_0_or_1 };

// Direct enumeration: counts paths of each half-length by multicoloured
// peaks (q) and the tracked vertex statistic (r) matching the rule:
// height-0 vertices including endpoints for red_from_0, height-1 vertices
// for red_from_0_or_1, r = 0 always for rule none.
struct BicolouredTable {
    int half_len_max = 0;
    std::vector<std::map<std::pair<int, int>, long>> table;  // [m]{(q,r): count}
};

BicolouredTable enumerate_bicoloured(int half_len_max, ColourRule rule);  // half_len_max <= 6

// Evaluates the table at rational weights as a series in u.
Series bicoloured_eval(const BicolouredTable& t, const Rational& a, const Rational& marker);

}  // namespace dqs
