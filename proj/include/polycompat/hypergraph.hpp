#pragma once

#include "polycompat/hermitian.hpp"
#include "polycompat/lp.hpp"
#include "polycompat/polytope.hpp"
#include "polycompat/tuples.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace polycompat {

/// Vertex/hyperedge structure; vertices are 0-based indices.
struct ProbabilityHypergraph {
    int vertex_count = 0;
    std::vector<std::vector<int>> edges;

    void validate_shape() const {
        if (vertex_count < 1) throw std::invalid_argument("hypergraph: no vertices");
        if (edges.empty()) throw std::invalid_argument("hypergraph: no edges");
        std::vector<bool> covered(vertex_count, false);
        for (const auto& e : edges) {
            if (e.empty()) throw std::invalid_argument("hypergraph: empty hyperedge");
            for (int v : e) {
                if (v < 0 || v >= vertex_count)
                    throw std::invalid_argument("hypergraph: vertex index out of range");
                covered[v] = true;
            }
        }
        for (int v = 0; v < vertex_count; ++v)
            if (!covered[v])
                throw std::invalid_argument("hypergraph: isolated vertex " + std::to_string(v));
    }

    /// |E| x |V| edge incidence matrix.
    RMatrix incidence() const {
        RMatrix m(static_cast<int>(edges.size()), vertex_count);
        for (size_t e = 0; e < edges.size(); ++e)
            for (int v : edges[e]) m.at(static_cast<int>(e), v) = 1;
        return m;
    }
};

struct HypergraphRejection {
    /// Dual weights on the edge-sum constraints at the rejecting LP optimum:
    /// the offending linear combination of edges.
    RVector edge_duals;
    std::string reason;
};

/// Checks for a strictly positive normalization via the exact LP
/// "maximize eps s.t. every edge sums to 1 and pi(v) >= eps".
inline std::variant<RVector, HypergraphRejection> validate(const ProbabilityHypergraph& g) {
    g.validate_shape();
    const int n = g.vertex_count;
    const int ne = static_cast<int>(g.edges.size());
    // Variables: pi (n), eps, slack s (n) with pi_v - eps - s_v = 0.
    LpProblem p;
    const int nv = 2 * n + 1;
    p.objective.assign(nv, Rational(0));
    p.objective[n] = 1;
    p.eq_lhs = RMatrix(ne + n, nv);
    p.eq_rhs.assign(ne + n, Rational(0));
    for (int e = 0; e < ne; ++e) {
        for (int v : g.edges[e]) p.eq_lhs.at(e, v) = 1;
        p.eq_rhs[e] = 1;
    }
    for (int v = 0; v < n; ++v) {
        p.eq_lhs.at(ne + v, v) = 1;
        p.eq_lhs.at(ne + v, n) = -1;
        p.eq_lhs.at(ne + v, n + 1 + v) = -1;
    }
    LpResult r = lp_solve(p);
    if (r.status == LpStatus::Optimal && r.value > 0) {
        RVector witness(r.point.begin(), r.point.begin() + n);
        return witness;
    }
    RVector duals(ne);
    for (int e = 0; e < ne; ++e) duals[e] = r.duals[e];
    std::string why = r.status == LpStatus::Infeasible
                          ? "no normalization satisfies the edge sums"
                          : "every normalization forces some vertex weight to 0";
    return HypergraphRejection{std::move(duals), std::move(why)};
}

inline bool is_probability_hypergraph(const ProbabilityHypergraph& g) {
    return std::holds_alternative<RVector>(validate(g));
}

/// Base point in Pi(G) plus a basis of Pi0(G); fixes the coordinate system
/// of the associated polytope. Presets may pin the vertex/facet order of
/// that polytope so published matrices are reproduced literally.
struct HypergraphChart {
    RVector base;                 // pi_*, strictly positive, edge sums 1
    std::vector<RVector> basis;   // pi_1..pi_g, edge sums 0, independent
    std::optional<std::vector<RVector>> preferred_vertices;
    std::optional<std::vector<RVector>> preferred_facets;

    int g() const { return static_cast<int>(basis.size()); }

    void validate_against(const ProbabilityHypergraph& graph) const {
        if (static_cast<int>(base.size()) != graph.vertex_count)
            throw std::invalid_argument("chart: base point size mismatch");
        for (const auto& b : base)
            if (b <= 0) throw std::invalid_argument("chart: base point must be strictly positive");
        for (const auto& e : graph.edges) {
            Rational s = 0;
            for (int v : e) s += base[v];
            if (s != 1) throw std::invalid_argument("chart: base point edge sum != 1");
        }
        RMatrix rows(static_cast<int>(basis.size()), graph.vertex_count);
        for (size_t i = 0; i < basis.size(); ++i) {
            if (static_cast<int>(basis[i].size()) != graph.vertex_count)
                throw std::invalid_argument("chart: basis element size mismatch");
            for (const auto& e : graph.edges) {
                Rational s = 0;
                for (int v : e) s += basis[i][v];
                if (s != 0) throw std::invalid_argument("chart: basis element edge sum != 0");
            }
            for (int v = 0; v < graph.vertex_count; ++v) rows.at(static_cast<int>(i), v) = basis[i][v];
        }
        if (rank_of(rows) != static_cast<int>(basis.size()))
            throw std::invalid_argument("chart: basis is linearly dependent");
        if (rank_of(nullspace(graph.incidence())) != static_cast<int>(basis.size()))
            throw std::invalid_argument("chart: basis does not span Pi0(G)");
    }
};

/// Canonical chart: the validation witness as base point and the RREF-
/// canonicalized null space of the incidence matrix as basis.
inline HypergraphChart pi0_basis(const ProbabilityHypergraph& g) {
    auto v = validate(g);
    if (!std::holds_alternative<RVector>(v))
        throw std::invalid_argument("pi0_basis: not a probability hypergraph: " +
                                    std::get<HypergraphRejection>(v).reason);
    HypergraphChart chart;
    chart.base = std::get<RVector>(v);
    Mat<Rational> ns = nullspace(g.incidence());
    // Canonical form: basis vectors as rows of a reduced row echelon matrix.
    RMatrix rows = ns.transposed();
    int rank = rref(rows);
    for (int i = 0; i < rank; ++i) {
        RVector b(g.vertex_count);
        for (int v2 = 0; v2 < g.vertex_count; ++v2) b[v2] = rows.at(i, v2);
        chart.basis.push_back(std::move(b));
    }
    return chart;
}

/// The polytope {a : pi_* + sum_x a_x pi_x in Pi(G)}. Facets come from the
/// vertex nonnegativity conditions normalized by their value at 0; vacuous
/// conditions drop out. Preset orders are applied when the chart pins them.
inline Polytope polytope_of(const ProbabilityHypergraph& g, const HypergraphChart& chart,
                            std::string label = "") {
    chart.validate_against(g);
    const int dim = chart.g();
    std::vector<RVector> normals;
    for (int v = 0; v < g.vertex_count; ++v) {
        RVector h(dim);
        bool vacuous = true;
        for (int x = 0; x < dim; ++x) {
            h[x] = -chart.basis[x][v] / chart.base[v];
            if (h[x] != 0) vacuous = false;
        }
        if (!vacuous) normals.push_back(std::move(h));
    }
    Polytope p = Polytope::from_facets(std::move(normals),
                                       label.empty() ? "hypergraph-polytope" : label);
    if (!chart.preferred_vertices && !chart.preferred_facets) return p;

    auto same_set = [](const std::vector<RVector>& a, const std::vector<RVector>& b) {
        if (a.size() != b.size()) return false;
        for (const auto& x : a)
            if (std::find(b.begin(), b.end(), x) == b.end()) return false;
        return true;
    };
    std::vector<RVector> verts = chart.preferred_vertices.value_or(p.vertices());
    std::vector<RVector> facets = chart.preferred_facets.value_or(p.facets());
    if (!same_set(verts, p.vertices()) || !same_set(facets, p.facets()))
        throw std::invalid_argument("chart preset order does not match the computed polytope");
    return Polytope::from_both(std::move(verts), std::move(facets), p.label());
}

/// G-operators: PSD per vertex with every hyperedge summing to the identity.
template <typename S>
bool g_operators_check(const ProbabilityHypergraph& g,
                       const std::vector<HermMatrix<S>>& assignment, double tol = kPsdTol) {
    g.validate_shape();
    if (static_cast<int>(assignment.size()) != g.vertex_count)
        throw std::invalid_argument("g_operators_check: assignment size mismatch");
    const int d = assignment.front().dim();
    for (const auto& m : assignment) {
        if (m.dim() != d) throw std::invalid_argument("g_operators_check: dimension mismatch");
        if constexpr (scalar_traits<S>::exact) {
            if (!psd_check(m)) return false;
        } else {
            if (!psd_check(m, tol)) return false;
        }
    }
    for (const auto& e : g.edges) {
        HermMatrix<S> sum = HermMatrix<S>::zero(d);
        for (int v : e) sum += assignment[v];
        if constexpr (scalar_traits<S>::exact) {
            if (!(sum == HermMatrix<S>::identity(d))) return false;
        } else {
            if (max_abs_diff(sum, HermMatrix<S>::identity(d)) > tol) return false;
        }
    }
    return true;
}

/// A_v = pi_*(v) I + sum_x pi_x(v) B_x.
template <typename S>
std::vector<HermMatrix<S>> g_operators_from_tuple(const ProbabilityHypergraph& g,
                                                  const HypergraphChart& chart,
                                                  const HermTuple<S>& b) {
    chart.validate_against(g);
    if (b.g() != chart.g())
        throw std::invalid_argument("g_operators_from_tuple: tuple length mismatch");
    const int d = b.dim();
    std::vector<HermMatrix<S>> out;
    for (int v = 0; v < g.vertex_count; ++v) {
        HermMatrix<S> m = HermMatrix<S>::identity(d);
        m.scale(backend_real<S>(chart.base[v]));
        for (int x = 0; x < chart.g(); ++x) {
            if (chart.basis[x][v] == 0) continue;
            HermMatrix<S> t = b[x];
            t.scale(backend_real<S>(chart.basis[x][v]));
            m += t;
        }
        out.push_back(std::move(m));
    }
    return out;
}

/// Inverse chart map (exact backend): recovers B from A_v by the exact
/// linear solve; rejects assignments outside the chart's affine span.
inline TupleX tuple_from_g_operators(const ProbabilityHypergraph& g,
                                     const HypergraphChart& chart,
                                     const std::vector<HermX>& assignment) {
    chart.validate_against(g);
    if (static_cast<int>(assignment.size()) != g.vertex_count)
        throw std::invalid_argument("tuple_from_g_operators: assignment size mismatch");
    const int d = assignment.front().dim();
    const int n = g.vertex_count;
    const int dim = chart.g();
    RMatrix coeff(n, dim);
    for (int v = 0; v < n; ++v)
        for (int x = 0; x < dim; ++x) coeff.at(v, x) = chart.basis[x][v];

    std::vector<HermX> b(dim, HermX::zero(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j) {
            RVector rhs_re(n), rhs_im(n);
            for (int v = 0; v < n; ++v) {
                GRational e = assignment[v](i, j);
                if (i == j) e.re -= chart.base[v];
                rhs_re[v] = e.re;
                rhs_im[v] = e.im;
            }
            auto sre = solve(coeff, rhs_re);
            auto sim = solve(coeff, rhs_im);
            if (!sre.ok() || !sim.ok())
                throw std::invalid_argument(
                    "tuple_from_g_operators: assignment outside the chart's affine span");
            for (int x = 0; x < dim; ++x) {
                GRational cur = b[x](i, j);
                b[x].set(i, j, GRational(sre.particular[x], sim.particular[x]) + cur);
            }
        }
    return TupleX(std::move(b));
}

namespace presets {

/// Two 3-outcome measurements sharing their first effect.
inline ProbabilityHypergraph pyramid_hypergraph() {
    return ProbabilityHypergraph{5, {{0, 1, 2}, {0, 3, 4}}};
}

/// The published chart for the pyramid: uniform base point and the basis
/// (1,0,-1,0,-1), (0,1,-1,0,0), (0,0,0,1,-1), with vertex and facet order
/// pinned to the published extended matrices.
inline HypergraphChart pyramid_chart() {
    HypergraphChart c;
    c.base.assign(5, Rational(1, 3));
    c.basis = {{1, 0, -1, 0, -1}, {0, 1, -1, 0, 0}, {0, 0, 0, 1, -1}};
    auto third = [](long long n) { return Rational(n, 3); };
    c.preferred_vertices = std::vector<RVector>{
        {third(2), third(-1), third(-1)}, {third(-1), third(-1), third(-1)},
        {third(-1), third(-1), third(2)}, {third(-1), third(2), third(-1)},
        {third(-1), third(2), third(2)}};
    c.preferred_facets = std::vector<RVector>{{Rational(-3), Rational(0), Rational(0)},
                                              {Rational(0), Rational(-3), Rational(0)},
                                              {Rational(0), Rational(0), Rational(-3)},
                                              {Rational(3), Rational(3), Rational(0)},
                                              {Rational(3), Rational(0), Rational(3)}};
    return c;
}

/// The three published example hypergraphs: two disjoint pairs, the pyramid
/// hypergraph, and the non-probability one with a singleton edge.
inline ProbabilityHypergraph disjoint_pairs() {
    return ProbabilityHypergraph{4, {{0, 1}, {2, 3}}};
}
inline ProbabilityHypergraph singleton_clash() {
    return ProbabilityHypergraph{3, {{0}, {0, 1}, {0, 2}}};
}

} // namespace presets
} // namespace polycompat
