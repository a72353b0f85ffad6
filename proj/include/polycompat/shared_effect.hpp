#pragma once

#include "polycompat/block_system.hpp"
#include "polycompat/hypergraph.hpp"
#include "polycompat/models.hpp"
#include "polycompat/tuples.hpp"

#include <optional>
#include <variant>

namespace polycompat {

/// Verdicts for a triple (A, B, C) of effects interpreted as the two
/// 3-outcome measurements (A, B, I-A-B) and (A, C, I-A-C).
struct SharedEffectResult {
    bool g_operators_ok = false;    // both triples are POVMs sharing A
    bool pmax_ok = false;           // shifted tuple lies in pyramid_max
    PruneResult restricted;         // joint POVM with the restricted pattern
    bool restricted_exact = false;  // true when pruning decided the pattern
    std::optional<ApResult> numeric;
};

/// Restricted joint-POVM pattern: Q1 = A, Q4+Q5 = B, Q2+Q3 = I-A-B,
/// Q3+Q5 = C, Q2+Q4 = I-A-C (unknown indices 0-based).
inline BlockConstraintSystem shared_effect_system(const HermX& a, const HermX& b,
                                                  const HermX& c) {
    const int d = a.dim();
    HermX iab = HermX::identity(d) - a - b;
    HermX iac = HermX::identity(d) - a - c;
    BlockConstraintSystem sys;
    sys.dim = d;
    sys.num_unknowns = 5;
    sys.equations = {{{0}, a, "Q1 = A"},
                     {{3, 4}, b, "Q4+Q5 = B"},
                     {{1, 2}, iab, "Q2+Q3 = I-A-B"},
                     {{2, 4}, c, "Q3+Q5 = C"},
                     {{1, 3}, iac, "Q2+Q4 = I-A-C"}};
    return sys;
}

/// The shift handled here: raw effects (A, B, C) are tested against the
/// pyramid through the translated tuple (A, B, C) - (1/3)(I, I, I).
inline TupleX shared_effect_tuple(const HermX& a, const HermX& b, const HermX& c) {
    HermX third = HermX::identity(a.dim());
    third.scale(Rational(1, 3));
    return TupleX({a - third, b - third, c - third});
}

inline SharedEffectResult shared_effect_check(const HermX& a, const HermX& b, const HermX& c,
                                              int max_iters = 5000, double tol = 1e-7) {
    if (a.dim() != b.dim() || a.dim() != c.dim())
        throw std::invalid_argument("shared_effect_check: dimension mismatch");
    const int d = a.dim();
    SharedEffectResult r;

    HermX iab = HermX::identity(d) - a - b;
    HermX iac = HermX::identity(d) - a - c;
    r.g_operators_ok = g_operators_check<GRational>(presets::pyramid_hypergraph(),
                                                    {a, b, iab, c, iac});

    Polytope pyr = models::pyramid();
    TupleX x = shared_effect_tuple(a, b, c);
    r.pmax_ok = pmax_check(pyr, x).member;

    r.restricted = range_pruned_feasibility(shared_effect_system(a, b, c));
    r.restricted_exact = !std::holds_alternative<PruneUndecided>(r.restricted);

    // Pruning cannot decide rank >= 2 residuals; fall through to the search.
    if (!r.restricted_exact) r.numeric = pmin_search_ap(pyr, to_float(x), max_iters, tol);
    return r;
}

} // namespace polycompat
