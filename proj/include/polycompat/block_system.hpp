#pragma once

#include "polycompat/eig.hpp"
#include "polycompat/hermitian.hpp"
#include "polycompat/lp.hpp"

#include <string>
#include <variant>
#include <vector>

namespace polycompat {

/// System of equations "sum of a subset of PSD unknowns = Hermitian target",
/// coefficients restricted to {0,1}. Covers the semiclassicality and
/// restricted joint-POVM patterns.
struct BlockConstraintSystem {
    struct Equation {
        std::vector<int> unknowns;
        HermX target;
        std::string name;
    };
    int dim = 0;
    int num_unknowns = 0;
    std::vector<Equation> equations;

    void validate() const {
        if (dim < 1 || dim > 4)
            throw std::invalid_argument("block system: exact pruning limited to 1 <= d <= 4");
        std::vector<bool> seen(num_unknowns, false);
        for (const auto& e : equations) {
            if (e.target.dim() != dim)
                throw std::invalid_argument("block system: target dimension mismatch");
            for (int u : e.unknowns) {
                if (u < 0 || u >= num_unknowns)
                    throw std::invalid_argument("block system: unknown index out of range");
                seen[u] = true;
            }
        }
        for (bool s : seen)
            if (!s) throw std::invalid_argument("block system: unknown appears in no equation");
    }
};

struct ExactlyInfeasible {
    int equation = -1;  // -1: infeasibility surfaced in the reduced scalar LP
    std::string reason;
};
struct ReducedFeasible {
    std::vector<HermX> assignment;
};
struct PruneUndecided {};
using PruneResult = std::variant<ExactlyInfeasible, ReducedFeasible, PruneUndecided>;

inline bool exactly_infeasible(const PruneResult& r) {
    return std::holds_alternative<ExactlyInfeasible>(r);
}
inline bool reduced_feasible(const PruneResult& r) {
    return std::holds_alternative<ReducedFeasible>(r);
}

namespace detail {

/// Real linear rows of the Hermitian equation sum_u c_u P_u = M over the
/// scalars c_u: one row per diagonal entry, two per off-diagonal entry.
inline void herm_equation_rows(const std::vector<HermX>& projectors,
                               const std::vector<int>& cols, int total_vars, const HermX& m,
                               std::vector<RVector>& rows, RVector& rhs) {
    const int d = m.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j) {
            int parts = i == j ? 1 : 2;
            for (int part = 0; part < parts; ++part) {
                RVector row(total_vars, Rational(0));
                for (size_t t = 0; t < cols.size(); ++t) {
                    GRational e = projectors[t](i, j);
                    row[cols[t]] = part == 0 ? e.re : e.im;
                }
                GRational tv = m(i, j);
                rows.push_back(std::move(row));
                rhs.push_back(part == 0 ? tv.re : tv.im);
            }
        }
}

} // namespace detail

/// Exact feasibility for block constraint systems by rank pruning.
///
/// Two rules iterate to a fixpoint: a non-PSD adjusted target is an exact
/// contradiction, and each unknown's support lies in the intersection of the
/// ranges of every target it contributes to. Unknowns pruned to <= 1
/// dimensional support become scalar multiples of fixed rank-one projectors
/// and the remaining system is an exact LP over those scalars. Undecided is
/// returned while any unknown keeps rank >= 2 support.
inline PruneResult range_pruned_feasibility(const BlockConstraintSystem& sys) {
    sys.validate();
    const int d = sys.dim;
    const int nu = sys.num_unknowns;

    std::vector<bool> fixed(nu, false);
    std::vector<HermX> value(nu, HermX::zero(d));
    std::vector<Mat<GRational>> support(nu, column_space(Mat<GRational>::identity(d)));

    struct Eq {
        std::vector<int> free;
        HermX target;
    };
    std::vector<Eq> eqs;
    for (const auto& e : sys.equations) eqs.push_back({e.unknowns, e.target});

    auto fix_unknown = [&](int u, const HermX& v) {
        fixed[u] = true;
        value[u] = v;
        for (auto& e : eqs) {
            auto it = std::find(e.free.begin(), e.free.end(), u);
            if (it == e.free.end()) continue;
            e.free.erase(it);
            e.target -= v;
        }
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t ei = 0; ei < eqs.size(); ++ei) {
            Eq& e = eqs[ei];
            if (!psd_check(e.target))
                return ExactlyInfeasible{static_cast<int>(ei),
                                         "equation '" + sys.equations[ei].name +
                                             "' has a non-PSD residual target"};
            if (e.free.empty()) {
                if (!e.target.is_zero())
                    return ExactlyInfeasible{static_cast<int>(ei),
                                             "equation '" + sys.equations[ei].name +
                                                 "' has all unknowns determined but a nonzero "
                                                 "residual"};
                continue;
            }
            Mat<GRational> range = column_space(e.target.to_full());
            for (int u : e.free) {
                if (support[u].cols() == 0) continue;
                Mat<GRational> cut = subspace_intersection(support[u], range);
                if (cut.cols() < support[u].cols()) {
                    support[u] = std::move(cut);
                    progress = true;
                }
            }
        }
        for (int u = 0; u < nu; ++u) {
            if (fixed[u] || support[u].cols() != 0) continue;
            fix_unknown(u, HermX::zero(d));
            progress = true;
        }
        for (size_t ei = 0; ei < eqs.size(); ++ei) {
            Eq& e = eqs[ei];
            if (e.free.size() != 1) continue;
            // Determined up to the support constraint; contradictions with
            // other equations surface through their residual targets.
            if (!psd_check(e.target))
                return ExactlyInfeasible{static_cast<int>(ei),
                                         "equation '" + sys.equations[ei].name +
                                             "' forces a non-PSD unknown"};
            fix_unknown(e.free.front(), e.target);
            progress = true;
        }
    }

    std::vector<int> scalar_vars;  // free unknowns with 1-dimensional support
    for (int u = 0; u < nu; ++u) {
        if (fixed[u]) continue;
        if (support[u].cols() >= 2) return PruneUndecided{};
        scalar_vars.push_back(u);
    }

    if (scalar_vars.empty()) {
        // Everything determined; residuals were checked to be zero above.
        ReducedFeasible r;
        r.assignment = value;
        return r;
    }

    // Reduce to an exact LP over the scalars c_u >= 0 with Q_u = c_u P_u.
    std::vector<HermX> projectors;
    std::vector<int> col_of(nu, -1);
    for (size_t t = 0; t < scalar_vars.size(); ++t) {
        int u = scalar_vars[t];
        col_of[u] = static_cast<int>(t);
        Rational n2 = 0;
        HermX proj(d);
        for (int i = 0; i < d; ++i) n2 += support[u].at(i, 0).norm2();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j <= i; ++j) {
                GRational wi = support[u].at(i, 0);
                GRational wj = support[u].at(j, 0);
                GRational e = wi * wj.conj();
                proj.set(i, j, GRational(e.re / n2, e.im / n2));
            }
        projectors.push_back(std::move(proj));
    }

    std::vector<RVector> rows;
    RVector rhs;
    for (const auto& e : eqs) {
        std::vector<HermX> projs;
        std::vector<int> cols;
        for (int u : e.free) {
            projs.push_back(projectors[col_of[u]]);
            cols.push_back(col_of[u]);
        }
        detail::herm_equation_rows(projs, cols, static_cast<int>(scalar_vars.size()), e.target,
                                   rows, rhs);
    }
    RMatrix lhs(static_cast<int>(rows.size()), static_cast<int>(scalar_vars.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            lhs.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    LpResult lp = lp_feasible(lhs, rhs);
    if (lp.status != LpStatus::Optimal)
        return ExactlyInfeasible{-1, "reduced rank-one scalar system is LP-infeasible"};

    ReducedFeasible r;
    r.assignment = value;
    for (size_t t = 0; t < scalar_vars.size(); ++t) {
        HermX q = projectors[t];
        q.scale(lp.point[t]);
        r.assignment[scalar_vars[t]] = std::move(q);
    }
    return r;
}

} // namespace polycompat
