#pragma once

#include <string>

#include "dqs/loops.hpp"
#include "dqs/machines.hpp"

namespace dqs {

// The two generating functions and the auxiliary series p = 1 - 1/P.
struct GFBundle {
    Series P, D, p;
    long order = 0;
};

enum class SolveStrategy { layer, newton };

struct SolveOptions {
    SolveStrategy strategy = SolveStrategy::newton;
    bool progress = false;
};

// The unique series with P(0) = 1 satisfying
//   Q(1/P - 1, t P^2 / (1-2P)^2) = 2P - 1
// through order N. The layer strategy fixes one coefficient at a time (the
// t^n defect is linear in the unknown with slope -2); the Newton strategy
// doubles the correct order each step and must produce identical output.
Series solve_P(const QSeries& q, long N, const SolveOptions& opt = {});

// 2D = 2 + t + 2Pt - 2Pt^2 - t sqrt(1 - 4P + 4P^2 - 8P^2 t + 4P^2 t^2 - 4Pt).
Series derive_D(const Series& P);

GFBundle compute_bundle(const QSeries& q, long N, const SolveOptions& opt = {});

struct IdentityCheck {
    bool ok = true;
    long first_fail = -1;
};

// P * 2t(D - 1 - Dt) == (D - 1)(D - t - 1), exactly through the common order.
IdentityCheck verify_SinR(const Series& P, const Series& D);

// T(1/P - 1, tP^2/(1-2P)^2, 2 - 1/P) == (2P - 1) D / (DP + P - D).
IdentityCheck verify_TRS(const Series& P, const Series& D);

// D == M(1 - 1/P, tP^2, 1) D / P + 1 through order N <= table half-length.
IdentityCheck verify_M_relation(const MTable& m, const Series& P, const Series& D, long N);

// T(a,u,x) == M(1 + (a-1)/Q, uQ^2, (Q1/Q) x) T / Q + 1 at fixed rational a, x.
IdentityCheck verify_M_closed_form(const MTable& m, const Rational& a, const Rational& x, long N);

// Evaluates the M coefficient table at series arguments through order N.
Series evaluate_m(const MTable& m, const Series& A, const Series& U, const Series& X, long N);

// Alternative defect formulations for the auxiliary series p, kept to
// document which substitution and sign reproduce the published coefficients.
enum class VariantSub { one_minus_p, one_plus_p };
enum class VariantRhs { printed, sign_flipped, cor_s };

struct VariantOutcome {
    VariantSub sub;
    VariantRhs rhs;
    bool has_root = false;
    std::string note;
    Series p{0};
    long first_divergence = -2;  // vs reference p; -1 = agrees through order
};

VariantOutcome solve_variant(const QSeries& q, long N, VariantSub sub, VariantRhs rhs,
                             const Series& reference_p);
std::vector<VariantOutcome> variant_study(const QSeries& q, long N);

}  // namespace dqs
