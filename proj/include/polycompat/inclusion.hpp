#pragma once

#include "polycompat/lp.hpp"
#include "polycompat/polytope.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace polycompat {

/// Dimension-free inclusion certificate (s, T): T is entrywise nonnegative
/// with vhat T hhat = diag(s_1, ..., s_g, 1). Valid for every dimension d.
class ScalingCertificate {
public:
    ScalingCertificate(const Polytope& p, RVector s, RMatrix t)
        : polytope_hash_(p.content_hash()), s_(std::move(s)), t_(std::move(t)) {
        if (!verifies(p))
            throw std::invalid_argument("scaling certificate does not satisfy vhat T hhat = D_s");
    }

    const RVector& s() const { return s_; }
    const RMatrix& t() const { return t_; }
    uint64_t polytope_hash() const { return polytope_hash_; }

    /// Exact re-verification of vhat T hhat = D_s against a polytope.
    bool verifies(const Polytope& p) const {
        if (p.content_hash() != polytope_hash_) return false;
        if (t_.rows() != p.num_vertices() || t_.cols() != p.num_facets()) return false;
        if (static_cast<int>(s_.size()) != p.g()) return false;
        for (int i = 0; i < t_.rows(); ++i)
            for (int j = 0; j < t_.cols(); ++j)
                if (t_.at(i, j) < 0) return false;
        RMatrix lhs = p.vhat() * t_ * p.hhat();
        return lhs == dhat(p.g(), s_);
    }

    static RMatrix dhat(int g, const RVector& s) {
        RMatrix d(g + 1, g + 1);
        for (int x = 0; x < g; ++x) d.at(x, x) = s[x];
        d.at(g, g) = 1;
        return d;
    }

private:
    uint64_t polytope_hash_;
    RVector s_;
    RMatrix t_;
};

/// Dimension-dependent symmetrization constant delta(d) = 2d-1 (d even),
/// 2d+1 (d odd).
inline long long delta(long long d) {
    if (d < 1) throw std::invalid_argument("delta requires d >= 1");
    return d % 2 == 0 ? 2 * d - 1 : 2 * d + 1;
}

enum class BoundMethod { Lp, Symmetrization, Comparison, Polysimplex };

inline const char* to_string(BoundMethod m) {
    switch (m) {
        case BoundMethod::Lp: return "lp";
        case BoundMethod::Symmetrization: return "symmetrization";
        case BoundMethod::Comparison: return "comparison";
        case BoundMethod::Polysimplex: return "polysimplex";
    }
    return "?";
}

/// An element of the inclusion set Delta_P(d), with its derivation.
struct InclusionBound {
    RVector s;
    BoundMethod method = BoundMethod::Lp;
    std::optional<int> dimension;  // nullopt: valid for all d
    std::string provenance;
    std::optional<ScalingCertificate> certificate;  // lp-route witness
};

namespace detail {

/// Equality system vhat T hhat = D over the k*r entries of T, as LP rows.
/// Extra trailing variables (e.g. the scaling t) can be appended by the
/// caller via `extra_cols`.
inline void build_vth_rows(const Polytope& p, int extra_cols, RMatrix& lhs,
                           std::vector<std::pair<int, int>>& cell_of_row) {
    const int g = p.g();
    const int k = p.num_vertices();
    const int r = p.num_facets();
    const RMatrix& vh = p.vhat();
    const RMatrix& hh = p.hhat();
    lhs = RMatrix((g + 1) * (g + 1), k * r + extra_cols);
    cell_of_row.clear();
    int row = 0;
    for (int a = 0; a <= g; ++a)
        for (int b = 0; b <= g; ++b, ++row) {
            for (int i = 0; i < k; ++i) {
                if (vh.at(a, i) == 0) continue;
                for (int j = 0; j < r; ++j) {
                    if (hh.at(j, b) == 0) continue;
                    lhs.at(row, i * r + j) = vh.at(a, i) * hh.at(j, b);
                }
            }
            cell_of_row.emplace_back(a, b);
        }
}

inline RMatrix t_from_point(const RVector& x, int k, int r) {
    RMatrix t(k, r);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < r; ++j) t.at(i, j) = x[i * r + j];
    return t;
}

} // namespace detail

/// LP feasibility of vhat T hhat = D_s with T >= 0 (Delta membership for all
/// d when feasible). Infeasibility only means this route provides no bound.
inline std::optional<ScalingCertificate> lp_feasible_scaling(const Polytope& p,
                                                             const RVector& s) {
    if (static_cast<int>(s.size()) != p.g())
        throw std::invalid_argument("lp_feasible_scaling: dimension mismatch");
    const int g = p.g();
    RMatrix lhs;
    std::vector<std::pair<int, int>> cells;
    detail::build_vth_rows(p, 0, lhs, cells);
    RVector rhs(cells.size());
    for (size_t row = 0; row < cells.size(); ++row) {
        auto [a, b] = cells[row];
        if (a == b) rhs[row] = a < g ? s[a] : Rational(1);
    }
    LpResult r = lp_feasible(lhs, rhs);
    if (r.status != LpStatus::Optimal) return std::nullopt;
    return ScalingCertificate(p, s,
                              detail::t_from_point(r.point, p.num_vertices(), p.num_facets()));
}

/// Exact LP maximizing t with vhat T hhat = diag(t w_1, ..., t w_g, 1).
inline std::pair<Rational, ScalingCertificate> lp_max_weighted(const Polytope& p,
                                                               const RVector& w) {
    if (static_cast<int>(w.size()) != p.g())
        throw std::invalid_argument("lp_max_weighted: dimension mismatch");
    for (const auto& e : w)
        if (e <= 0) throw std::invalid_argument("lp_max_weighted: direction must be positive");
    const int g = p.g();
    const int k = p.num_vertices();
    const int r = p.num_facets();
    LpProblem lp;
    std::vector<std::pair<int, int>> cells;
    detail::build_vth_rows(p, 1, lp.eq_lhs, cells);
    lp.eq_rhs.assign(cells.size(), Rational(0));
    lp.objective.assign(k * r + 1, Rational(0));
    lp.objective[k * r] = 1;
    for (size_t row = 0; row < cells.size(); ++row) {
        auto [a, b] = cells[row];
        if (a == b) {
            if (a < g)
                lp.eq_lhs.at(static_cast<int>(row), k * r) = -w[a];
            else
                lp.eq_rhs[row] = 1;
        }
    }
    LpResult res = lp_solve(lp);
    if (res.status != LpStatus::Optimal)
        throw std::logic_error("lp_max_weighted: LP must be feasible and bounded");
    RVector s(g);
    for (int x = 0; x < g; ++x) s[x] = res.value * w[x];
    return {res.value, ScalingCertificate(p, s, detail::t_from_point(res.point, k, r))};
}

/// Flat specialization: maximize t with D = diag(t, ..., t, 1).
inline std::pair<Rational, ScalingCertificate> lp_max_uniform_scaling(const Polytope& p) {
    return lp_max_weighted(p, RVector(p.g(), Rational(1)));
}

inline InclusionBound lp_bound(const Polytope& p) {
    auto [t, cert] = lp_max_uniform_scaling(p);
    InclusionBound b;
    b.s = cert.s();
    b.method = BoundMethod::Lp;
    b.dimension = std::nullopt;
    b.provenance = "lp-max flat scaling t* = " + to_string(t);
    b.certificate = std::move(cert);
    return b;
}

/// Symmetrization route: s_sym(P) / delta(d), valid at dimension d.
inline InclusionBound symmetrization_bound(const Polytope& p, int d) {
    Rational s_sym = symmetrization_constant(p);
    Rational val = s_sym / delta(d);
    InclusionBound b;
    b.s.assign(p.g(), val);
    b.method = BoundMethod::Symmetrization;
    b.dimension = d;
    b.provenance = "s_sym = " + to_string(s_sym) + ", delta(" + std::to_string(d) +
                   ") = " + std::to_string(delta(d));
    return b;
}

/// Polytope-comparison route: I_{P->Q} * Delta_Q * I_{Q->P}.
inline InclusionBound comparison_bound(const Polytope& p, const Polytope& q,
                                       const InclusionBound& known_q) {
    if (p.g() != q.g()) throw std::invalid_argument("comparison_bound: dimension mismatch");
    Rational into_q = scaling_into(p, q);
    Rational back = scaling_into(q, p);
    InclusionBound b;
    b.s.resize(p.g());
    for (int x = 0; x < p.g(); ++x) b.s[x] = into_q * known_q.s[x] * back;
    b.method = BoundMethod::Comparison;
    b.dimension = known_q.dimension;
    b.provenance = "I(P->Q) = " + to_string(into_q) + ", I(Q->P) = " + to_string(back) +
                   " via " + std::string(to_string(known_q.method));
    return b;
}

/// Mixing route for products of simplices: each factor has scaling 1, the
/// mixture weights carry over coordinatewise.
inline InclusionBound polysimplex_bound(const std::vector<Polytope>& factors,
                                        const RVector& lambda) {
    if (factors.empty()) throw std::invalid_argument("polysimplex_bound: no factors");
    if (lambda.size() != factors.size())
        throw std::invalid_argument("polysimplex_bound: weight count mismatch");
    Rational total = 0;
    for (const auto& l : lambda) {
        if (l < 0) throw std::invalid_argument("polysimplex_bound: negative weight");
        total += l;
    }
    if (total != 1) throw std::invalid_argument("polysimplex_bound: weights must sum to 1");
    InclusionBound b;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].num_vertices() != factors[i].g() + 1)
            throw std::invalid_argument("polysimplex_bound: factor is not a simplex");
        for (int x = 0; x < factors[i].g(); ++x) b.s.push_back(lambda[i]);
    }
    b.method = BoundMethod::Polysimplex;
    b.dimension = std::nullopt;
    b.provenance = "simplex factors mixed";
    return b;
}

/// Aggregates the LP, symmetrization, and registered comparison routes and
/// keeps the maxima of the entrywise partial order (all incomparable maxima).
inline std::vector<InclusionBound> best_known(
    const Polytope& p, int d,
    const std::vector<std::pair<const Polytope*, InclusionBound>>& comparisons = {}) {
    std::vector<InclusionBound> all;
    all.push_back(lp_bound(p));
    all.push_back(symmetrization_bound(p, d));
    for (const auto& [q, known] : comparisons) all.push_back(comparison_bound(p, *q, known));

    auto dominated = [](const RVector& a, const RVector& b) {
        // a <= b entrywise and a != b
        bool strict = false;
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] > b[i]) return false;
            if (a[i] < b[i]) strict = true;
        }
        return strict;
    };
    std::vector<InclusionBound> maxima;
    for (size_t i = 0; i < all.size(); ++i) {
        bool keep = true;
        for (size_t j = 0; j < all.size() && keep; ++j)
            if (i != j && dominated(all[i].s, all[j].s)) keep = false;
        for (const auto& m : maxima)
            if (m.s == all[i].s) keep = false;  // drop duplicates
        if (keep) maxima.push_back(std::move(all[i]));
    }
    return maxima;
}

} // namespace polycompat
