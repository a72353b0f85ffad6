#pragma once

#include "polycompat/matrix.hpp"
#include "polycompat/rational.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace polycompat {

/// Exact linear program: maximize <objective, x> subject to eq_lhs x = eq_rhs
/// and x_j >= 0 for every j with nonneg[j] (other variables are free).
struct LpProblem {
    RVector objective;
    RMatrix eq_lhs;
    RVector eq_rhs;
    std::vector<bool> nonneg;  // empty means "all nonnegative"

    int num_vars() const { return static_cast<int>(objective.size()); }
    int num_rows() const { return eq_lhs.rows(); }

    void validate() const {
        if (eq_lhs.rows() != static_cast<int>(eq_rhs.size()))
            throw std::invalid_argument("lp: constraint rows != rhs length");
        if (eq_lhs.cols() != num_vars())
            throw std::invalid_argument("lp: objective length != variable count");
        if (!nonneg.empty() && static_cast<int>(nonneg.size()) != num_vars())
            throw std::invalid_argument("lp: bounds length != variable count");
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    RVector point;  // original variables, Optimal only
    /// Simplex multipliers per original row. At an optimum, y satisfies
    /// <y, a_j> >= c_j for all columns j. For an infeasible problem this is a
    /// Farkas certificate: <y, a_j> <= 0 for all j while <y, b> > 0.
    RVector duals;
};

namespace detail {

struct LpStats {
    long pivots = 0;
};
inline LpStats& lp_stats() {
    thread_local LpStats s;
    return s;
}

/// Dense rational simplex tableau over columns [structural | artificial | rhs].
class SimplexTableau {
public:
    SimplexTableau(const RMatrix& a, const RVector& b) : m_(a.rows()), ns_(a.cols()) {
        t_.assign(m_, RVector(ns_ + m_ + 1));
        flip_.assign(m_, 1);
        dead_.assign(m_, false);
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            bool neg = b[i] < 0;
            flip_[i] = neg ? -1 : 1;
            for (int j = 0; j < ns_; ++j) t_[i][j] = neg ? -a.at(i, j) : a.at(i, j);
            t_[i][ns_ + i] = 1;
            t_[i][rhs()] = neg ? -b[i] : b[i];
            basis_[i] = ns_ + i;
        }
    }

    int rhs() const { return ns_ + m_; }

    /// Simplex iteration loop for the current objective row; objRow[j] holds
    /// z_j - c_j and an entering column needs z_j - c_j < 0.
    ///
    /// Pricing is Dantzig (most negative reduced cost) with an exact
    /// lexicographic ratio test on [rhs | B^-1], which prevents cycling on
    /// the heavily degenerate feasibility systems this library produces.
    /// Should the lex invariant ever be disturbed (drive-out pivots), a
    /// pivot-count cap falls back to Bland's rule, which terminates
    /// unconditionally. Returns false when unbounded.
    bool iterate(RVector& obj_row, Rational& obj_val, bool allow_artificial) {
        const int limit = allow_artificial ? ns_ + m_ : ns_;
        const long bland_after = 2000 + 20L * (ns_ + m_);
        long pivots_here = 0;
        for (;;) {
            bool bland = pivots_here >= bland_after;
            int enter = -1;
            for (int j = 0; j < limit; ++j) {
                if (obj_row[j] >= 0) continue;
                if (bland) { enter = j; break; }
                if (enter < 0 || obj_row[j] < obj_row[enter]) enter = j;
            }
            if (enter < 0) return true;  // optimal
            int leave = -1;
            for (int i = 0; i < m_; ++i) {
                if (dead_[i] || t_[i][enter] <= 0) continue;
                if (leave < 0) { leave = i; continue; }
                if (bland) {
                    Rational ri = t_[i][rhs()] / t_[i][enter];
                    Rational rl = t_[leave][rhs()] / t_[leave][enter];
                    if (ri < rl || (ri == rl && basis_[i] < basis_[leave])) leave = i;
                } else if (lex_less_ratio(i, leave, enter)) {
                    leave = i;
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter, obj_row, obj_val);
            ++pivots_here;
        }
    }

    /// Lexicographic comparison of row i against row l as ratio vectors
    /// (rhs, B^-1 row) / pivot-column entry, by exact cross-multiplication.
    bool lex_less_ratio(int i, int l, int col) const {
        const Rational& ai = t_[i][col];
        const Rational& al = t_[l][col];
        Rational lhs = t_[i][rhs()] * al;
        Rational rhs_v = t_[l][rhs()] * ai;
        if (lhs != rhs_v) return lhs < rhs_v;
        for (int q = 0; q < m_; ++q) {
            lhs = t_[i][ns_ + q] * al;
            rhs_v = t_[l][ns_ + q] * ai;
            if (lhs != rhs_v) return lhs < rhs_v;
        }
        return basis_[i] < basis_[l];
    }

    void pivot(int row, int col, RVector& obj_row, Rational& obj_val) {
        ++lp_stats().pivots;
        RVector& pr = t_[row];
        Rational inv = 1 / pr[col];
        std::vector<int> nz;
        nz.reserve(pr.size());
        for (int j = 0; j <= rhs(); ++j) {
            if (pr[j] == 0) continue;
            pr[j] *= inv;
            nz.push_back(j);
        }
        pr[col] = 1;
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            const Rational f = t_[i][col];
            if (f == 0) continue;
            RVector& ri = t_[i];
            for (int j : nz) ri[j] -= f * pr[j];
        }
        const Rational f = obj_row[col];
        if (f != 0) {
            for (int j : nz) {
                if (j == rhs())
                    obj_val -= f * pr[j];
                else
                    obj_row[j] -= f * pr[j];
            }
        }
        basis_[row] = col;
    }

    /// Objective row z_j - c_j for cost vector c (indexed over all columns).
    RVector make_obj_row(const RVector& cost, Rational& obj_val) const {
        RVector row(ns_ + m_);
        obj_val = 0;
        for (int j = 0; j < ns_ + m_; ++j) {
            Rational z;
            for (int i = 0; i < m_; ++i) {
                if (dead_[i]) continue;
                const Rational& cb = cost[basis_[i]];
                if (cb != 0 && t_[i][j] != 0) z += cb * t_[i][j];
            }
            row[j] = z - cost[j];
        }
        for (int i = 0; i < m_; ++i)
            if (!dead_[i] && cost[basis_[i]] != 0) obj_val += cost[basis_[i]] * t_[i][rhs()];
        return row;
    }

    /// After a feasible phase one, pivot artificial variables out of the
    /// basis; rows that cannot be cleared are redundant and get disabled.
    void drive_out_artificials(RVector& obj_row, Rational& obj_val) {
        for (int i = 0; i < m_; ++i) {
            if (dead_[i] || basis_[i] < ns_) continue;
            int col = -1;
            for (int j = 0; j < ns_; ++j)
                if (t_[i][j] != 0) { col = j; break; }
            if (col < 0) {
                dead_[i] = true;
            } else {
                pivot(i, col, obj_row, obj_val);
            }
        }
    }

    int m() const { return m_; }
    int ns() const { return ns_; }
    int basis(int i) const { return basis_[i]; }
    bool dead(int i) const { return dead_[i]; }
    int flip(int i) const { return flip_[i]; }
    const Rational& entry(int i, int j) const { return t_[i][j]; }
    const Rational& rhs_of(int i) const { return t_[i][rhs()]; }

private:
    int m_, ns_;
    std::vector<RVector> t_;
    std::vector<int> basis_;
    std::vector<int> flip_;
    std::vector<bool> dead_;
};

} // namespace detail

/// Two-phase exact simplex with Bland's anti-cycling rule throughout.
inline LpResult lp_solve(const LpProblem& p) {
    p.validate();
    const int n = p.num_vars();
    const int m = p.num_rows();

    // Split free variables x = x+ - x-.
    std::vector<int> split_col(n, -1);
    int ns = n;
    for (int j = 0; j < n; ++j)
        if (!p.nonneg.empty() && !p.nonneg[j]) split_col[j] = ns++;

    RMatrix a(m, ns);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            a.at(i, j) = p.eq_lhs.at(i, j);
            if (split_col[j] >= 0) a.at(i, split_col[j]) = -p.eq_lhs.at(i, j);
        }
    RVector cost(ns + m);
    for (int j = 0; j < n; ++j) {
        cost[j] = p.objective[j];
        if (split_col[j] >= 0) cost[split_col[j]] = -p.objective[j];
    }

    detail::SimplexTableau tab(a, p.eq_rhs);

    // Phase one: maximize minus the sum of artificials.
    RVector phase1_cost(ns + m);
    for (int i = 0; i < m; ++i) phase1_cost[ns + i] = -1;
    Rational obj_val;
    RVector obj_row = tab.make_obj_row(phase1_cost, obj_val);
    bool fin = tab.iterate(obj_row, obj_val, true);
    assert(fin);  // phase-one objective is bounded above by 0
    (void)fin;

    LpResult res;
    if (obj_val < 0) {
        res.status = LpStatus::Infeasible;
        // Farkas vector from the phase-one duals: y_i = (z - c)_{art i} - 1.
        res.duals.resize(m);
        for (int i = 0; i < m; ++i) {
            Rational yi = obj_row[ns + i] - 1;
            res.duals[i] = -yi * tab.flip(i);
        }
        return res;
    }

    tab.drive_out_artificials(obj_row, obj_val);

    // Phase two.
    RVector obj_row2 = tab.make_obj_row(cost, obj_val);
    if (!tab.iterate(obj_row2, obj_val, false)) {
        res.status = LpStatus::Unbounded;
        return res;
    }

    res.status = LpStatus::Optimal;
    res.value = obj_val;
    RVector xs(ns);
    for (int i = 0; i < m; ++i)
        if (!tab.dead(i) && tab.basis(i) < ns) xs[tab.basis(i)] = tab.rhs_of(i);
    res.point.resize(n);
    for (int j = 0; j < n; ++j)
        res.point[j] = split_col[j] >= 0 ? xs[j] - xs[split_col[j]] : xs[j];
    res.duals.resize(m);
    for (int i = 0; i < m; ++i)
        res.duals[i] = tab.dead(i) ? Rational(0) : obj_row2[ns + i] * tab.flip(i);
    return res;
}

/// Feasibility-only convenience: is there x >= 0 with ax = b?
inline LpResult lp_feasible(const RMatrix& a, const RVector& b) {
    LpProblem p;
    p.objective.assign(a.cols(), Rational(0));
    p.eq_lhs = a;
    p.eq_rhs = b;
    return lp_solve(p);
}

} // namespace polycompat
