#pragma once

#include "polycompat/lp.hpp"
#include "polycompat/matrix.hpp"
#include "polycompat/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polycompat {

/// Thrown when a vertex input does not have 0 in the interior of its hull.
/// Carries a separating functional c with <c, v_i> <= alpha <= 0 for all i.
struct NotInteriorError : std::runtime_error {
    RVector separating;
    Rational offset;
    NotInteriorError(RVector c, Rational alpha)
        : std::runtime_error("0 is not in the interior of the polytope"),
          separating(std::move(c)), offset(std::move(alpha)) {}
};

struct UnboundedError : std::runtime_error {
    int direction;
    explicit UnboundedError(int dir)
        : std::runtime_error("half-space intersection is unbounded"), direction(dir) {}
};

struct ScaleLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool lex_less(const RVector& a, const RVector& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

inline void check_common_dim(const std::vector<RVector>& pts) {
    if (pts.empty()) throw std::invalid_argument("empty point/normal list");
    for (const auto& p : pts)
        if (p.size() != pts.front().size())
            throw std::invalid_argument("mixed dimensions in point/normal list");
}

inline std::vector<RVector> dedupe(std::vector<RVector> pts) {
    std::vector<RVector> out;
    for (auto& p : pts)
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    return out;
}

/// A point is redundant iff it is a convex combination of the others.
inline std::vector<RVector> remove_redundant_points(std::vector<RVector> pts) {
    const int g = static_cast<int>(pts.front().size());
    bool removed = true;
    while (removed && pts.size() > 1) {
        removed = false;
        for (size_t i = 0; i < pts.size(); ++i) {
            int k = static_cast<int>(pts.size()) - 1;
            RMatrix a(g + 1, k);
            RVector b(g + 1);
            int col = 0;
            for (size_t j = 0; j < pts.size(); ++j) {
                if (j == i) continue;
                for (int x = 0; x < g; ++x) a.at(x, col) = pts[j][x];
                a.at(g, col) = 1;
                ++col;
            }
            for (int x = 0; x < g; ++x) b[x] = pts[i][x];
            b[g] = 1;
            if (lp_feasible(a, b).status == LpStatus::Optimal) {
                pts.erase(pts.begin() + static_cast<long>(i));
                removed = true;
                break;
            }
        }
    }
    return pts;
}

/// Exact 0-in-interior test for a convex hull. Throws NotInteriorError with a
/// separating functional obtained from the LP duals when the test fails.
inline void require_zero_interior(const std::vector<RVector>& verts) {
    const int g = static_cast<int>(verts.front().size());
    const int k = static_cast<int>(verts.size());

    // Affine span must be all of R^g: rank of Vhat = g + 1.
    RMatrix vhat(g + 1, k);
    for (int i = 0; i < k; ++i) {
        for (int x = 0; x < g; ++x) vhat.at(x, i) = verts[i][x];
        vhat.at(g, i) = 1;
    }
    if (rank_of(vhat) < g + 1) {
        RMatrix left = nullspace(vhat.transposed());
        RVector c(g);
        Rational c0 = left.at(g, 0);
        for (int x = 0; x < g; ++x) c[x] = left.at(x, 0);
        // <c, v_i> = -c0 for all i; flip so the constant is <= 0.
        if (-c0 > 0) {
            for (auto& e : c) e = -e;
            c0 = -c0;
        }
        throw NotInteriorError(std::move(c), -c0);
    }

    // max eps s.t. sum_i mu_i v_i + eps * (sum_i v_i) = 0, sum mu + k eps = 1.
    LpProblem p;
    p.objective.assign(k + 1, Rational(0));
    p.objective[k] = 1;
    p.eq_lhs = RMatrix(g + 1, k + 1);
    p.eq_rhs.assign(g + 1, Rational(0));
    for (int x = 0; x < g; ++x) {
        Rational sum = 0;
        for (int i = 0; i < k; ++i) {
            p.eq_lhs.at(x, i) = verts[i][x];
            sum += verts[i][x];
        }
        p.eq_lhs.at(x, k) = sum;
    }
    for (int i = 0; i < k; ++i) p.eq_lhs.at(g, i) = 1;
    p.eq_lhs.at(g, k) = k;
    p.eq_rhs[g] = 1;

    LpResult r = lp_solve(p);
    if (r.status == LpStatus::Optimal && r.value > 0) return;

    RVector c(g);
    if (r.status == LpStatus::Infeasible) {
        // Farkas: <y', v_i> <= -y0 < 0 separates 0 strictly.
        for (int x = 0; x < g; ++x) c[x] = r.duals[x];
        throw NotInteriorError(std::move(c), -r.duals[g]);
    }
    // Optimum 0: duals give <y', v_i> >= 0 with y' != 0; -y' supports at 0.
    for (int x = 0; x < g; ++x) c[x] = -r.duals[x];
    throw NotInteriorError(std::move(c), Rational(0));
}

/// Brute-force vertex enumeration for a bounded 0-interior H-representation:
/// solve every rank-g subset of <h_j, x> = 1 and keep feasible solutions.
inline std::vector<RVector> enumerate_from_facets(const std::vector<RVector>& facets) {
    const int g = static_cast<int>(facets.front().size());
    const int r = static_cast<int>(facets.size());
    if (g > 8 || r > 40)
        throw ScaleLimitError("vertex enumeration limited to g <= 8, r <= 40");

    std::vector<RVector> found;
    std::vector<int> chosen;

    // Depth-first over facet subsets, extending only while the chosen
    // normals stay linearly independent.
    std::function<void(int, const RMatrix&)> recurse = [&](int start, const RMatrix& rows) {
        if (rows.rows() == g) {
            RMatrix a(g, g);
            RVector b(g, Rational(1));
            for (int i = 0; i < g; ++i)
                for (int x = 0; x < g; ++x) a.at(i, x) = facets[chosen[i]][x];
            auto sol = solve(a, b);
            if (sol.status != SolveStatus::Unique) return;
            for (const auto& h : facets)
                if (dot(h, sol.particular) > 1) return;
            if (std::find(found.begin(), found.end(), sol.particular) == found.end())
                found.push_back(sol.particular);
            return;
        }
        for (int j = start; j < r; ++j) {
            RMatrix ext(rows.rows() + 1, g);
            for (int i = 0; i < rows.rows(); ++i)
                for (int x = 0; x < g; ++x) ext.at(i, x) = rows.at(i, x);
            for (int x = 0; x < g; ++x) ext.at(rows.rows(), x) = facets[j][x];
            if (rank_of(ext) != ext.rows()) continue;
            chosen.push_back(j);
            recurse(j + 1, ext);
            chosen.pop_back();
        }
    };
    recurse(0, RMatrix(0, g));
    std::sort(found.begin(), found.end(), lex_less);
    return found;
}

} // namespace detail

/// Rational polytope with 0 in the interior. Both representations are
/// finalized at construction; values are immutable afterwards.
class Polytope {
public:
    /// Builds from extreme points. Redundant points are removed exactly via
    /// LP; the facet representation is enumerated through the polar.
    static Polytope from_vertices(std::vector<RVector> points, std::string label = "") {
        detail::check_common_dim(points);
        points = detail::remove_redundant_points(detail::dedupe(std::move(points)));
        detail::require_zero_interior(points);
        // Facets of P are the vertices of the polar {h : <h, v_i> <= 1}.
        std::vector<RVector> facets = detail::enumerate_from_facets(points);
        std::sort(points.begin(), points.end(), detail::lex_less);
        return Polytope(std::move(points), std::move(facets), std::move(label));
    }

    /// Builds from facet normals h_j, each encoding <h_j, x> <= 1. The
    /// intersection must be bounded; redundant half-spaces are dropped.
    static Polytope from_facets(std::vector<RVector> normals, std::string label = "") {
        detail::check_common_dim(normals);
        normals = detail::dedupe(std::move(normals));
        const int g = static_cast<int>(normals.front().size());
        // Boundedness: max +-x_i over the region must be finite. Slack form
        // <h_j, x> + s_j = 1 with x free, s >= 0.
        const int r = static_cast<int>(normals.size());
        for (int dir = 0; dir < 2 * g; ++dir) {
            int coord = dir / 2;
            LpProblem p;
            p.objective.assign(g + r, Rational(0));
            p.objective[coord] = dir % 2 == 0 ? 1 : -1;
            p.eq_lhs = RMatrix(r, g + r);
            p.eq_rhs.assign(r, Rational(1));
            p.nonneg.assign(g + r, true);
            for (int x = 0; x < g; ++x) p.nonneg[x] = false;
            for (int j = 0; j < r; ++j) {
                for (int x = 0; x < g; ++x) p.eq_lhs.at(j, x) = normals[j][x];
                p.eq_lhs.at(j, g + j) = 1;
            }
            if (lp_solve(p).status == LpStatus::Unbounded) throw UnboundedError(coord);
        }
        std::vector<RVector> verts = detail::enumerate_from_facets(normals);
        // Irredundant facets are the vertices of the polar.
        std::vector<RVector> facets = detail::enumerate_from_facets(verts);
        return Polytope(std::move(verts), std::move(facets), std::move(label));
    }

    /// Model-builder entry point: both representations supplied and verified.
    static Polytope from_both(std::vector<RVector> vertices, std::vector<RVector> facets,
                              std::string label = "") {
        detail::check_common_dim(vertices);
        detail::check_common_dim(facets);
        if (vertices.front().size() != facets.front().size())
            throw std::invalid_argument("vertex/facet dimension mismatch");
        return Polytope(std::move(vertices), std::move(facets), std::move(label));
    }

    int g() const { return g_; }
    int num_vertices() const { return static_cast<int>(verts_.size()); }
    int num_facets() const { return static_cast<int>(facets_.size()); }
    const std::vector<RVector>& vertices() const { return verts_; }
    const std::vector<RVector>& facets() const { return facets_; }
    const RVector& vertex(int i) const { return verts_[i]; }
    const RVector& facet(int j) const { return facets_[j]; }
    const std::string& label() const { return label_; }

    /// Extended matrices: vhat = [V; 1^T], hhat = [-H | 1], slack = hhat vhat.
    const RMatrix& vhat() const { return vhat_; }
    const RMatrix& hhat() const { return hhat_; }
    const RMatrix& slack() const { return slack_; }

    Polytope polar(std::string label = "") const {
        return Polytope(facets_, verts_,
                        label.empty() ? (label_.empty() ? "" : label_ + "*") : label);
    }

    Polytope negated() const {
        std::vector<RVector> v = verts_, f = facets_;
        for (auto& p : v)
            for (auto& e : p) e = -e;
        for (auto& p : f)
            for (auto& e : p) e = -e;
        std::sort(v.begin(), v.end(), detail::lex_less);
        std::sort(f.begin(), f.end(), detail::lex_less);
        return Polytope(std::move(v), std::move(f), label_.empty() ? "" : "-" + label_);
    }

    struct ContainsResult {
        bool inside = false;
        int violated_facet = -1;  // first facet with <h, x> > 1 when outside
        explicit operator bool() const { return inside; }
    };

    ContainsResult contains_point(const RVector& x) const {
        if (static_cast<int>(x.size()) != g_)
            throw std::invalid_argument("contains_point: dimension mismatch");
        for (int j = 0; j < num_facets(); ++j)
            if (dot(facets_[j], x) > 1) return {false, j};
        return {true, -1};
    }

    /// 64-bit FNV-1a over the canonical representation; binds certificates
    /// to this exact vertex/facet order.
    uint64_t content_hash() const {
        uint64_t h = 1469598103934665603ull;
        auto mix = [&h](const std::string& s) {
            for (unsigned char c : s) {
                h ^= c;
                h *= 1099511628211ull;
            }
        };
        mix("g:" + std::to_string(g_));
        for (const auto& v : verts_) {
            mix("|v");
            for (const auto& e : v) mix(" " + to_string(e));
        }
        for (const auto& f : facets_) {
            mix("|h");
            for (const auto& e : f) mix(" " + to_string(e));
        }
        return h;
    }

    friend bool operator==(const Polytope& a, const Polytope& b) {
        return a.verts_ == b.verts_ && a.facets_ == b.facets_;
    }

private:
    Polytope(std::vector<RVector> verts, std::vector<RVector> facets, std::string label)
        : g_(static_cast<int>(verts.front().size())),
          verts_(std::move(verts)), facets_(std::move(facets)), label_(std::move(label)) {
        const int k = num_vertices();
        const int r = num_facets();
        vhat_ = RMatrix(g_ + 1, k);
        for (int i = 0; i < k; ++i) {
            for (int x = 0; x < g_; ++x) vhat_.at(x, i) = verts_[i][x];
            vhat_.at(g_, i) = 1;
        }
        hhat_ = RMatrix(r, g_ + 1);
        for (int j = 0; j < r; ++j) {
            for (int x = 0; x < g_; ++x) hhat_.at(j, x) = -facets_[j][x];
            hhat_.at(j, g_) = 1;
        }
        slack_ = hhat_ * vhat_;
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < k; ++i)
                if (slack_.at(j, i) < 0)
                    throw std::invalid_argument("inconsistent polytope: negative slack");
        for (int i = 0; i < k; ++i) {
            int zeros = 0;
            for (int j = 0; j < r; ++j)
                if (slack_.at(j, i) == 0) ++zeros;
            if (zeros < g_)
                throw std::invalid_argument("inconsistent polytope: vertex saturates < g facets");
        }
    }

    int g_;
    std::vector<RVector> verts_;
    std::vector<RVector> facets_;
    std::string label_;
    RMatrix vhat_, hhat_, slack_;
};

/// Facet list of a V-represented hull (vertices of the polar), lex order.
inline std::vector<RVector> enumerate_facets(const std::vector<RVector>& vertices) {
    return detail::enumerate_from_facets(vertices);
}

/// Vertex list of a bounded 0-interior H-representation, lex order.
inline std::vector<RVector> enumerate_vertices(const std::vector<RVector>& facets) {
    return detail::enumerate_from_facets(facets);
}

inline Polytope cartesian_product(const Polytope& p1, const Polytope& p2,
                                  std::string label = "") {
    const int g1 = p1.g(), g2 = p2.g();
    std::vector<RVector> verts;
    verts.reserve(static_cast<size_t>(p1.num_vertices()) * p2.num_vertices());
    for (const auto& v : p1.vertices())
        for (const auto& w : p2.vertices()) {
            RVector x(g1 + g2);
            std::copy(v.begin(), v.end(), x.begin());
            std::copy(w.begin(), w.end(), x.begin() + g1);
            verts.push_back(std::move(x));
        }
    std::vector<RVector> facets;
    for (const auto& h : p1.facets()) {
        RVector x(g1 + g2);
        std::copy(h.begin(), h.end(), x.begin());
        facets.push_back(std::move(x));
    }
    for (const auto& h : p2.facets()) {
        RVector x(g1 + g2);
        std::copy(h.begin(), h.end(), x.begin() + g1);
        facets.push_back(std::move(x));
    }
    if (label.empty() && !p1.label().empty() && !p2.label().empty())
        label = p1.label() + " x " + p2.label();
    return Polytope::from_both(std::move(verts), std::move(facets), std::move(label));
}

/// P1 (+) P2 = (P1* x P2*)*: vertices are padded unions, facets are pairs.
inline Polytope direct_sum(const Polytope& p1, const Polytope& p2, std::string label = "") {
    const int g1 = p1.g(), g2 = p2.g();
    std::vector<RVector> verts;
    for (const auto& v : p1.vertices()) {
        RVector x(g1 + g2);
        std::copy(v.begin(), v.end(), x.begin());
        verts.push_back(std::move(x));
    }
    for (const auto& w : p2.vertices()) {
        RVector x(g1 + g2);
        std::copy(w.begin(), w.end(), x.begin() + g1);
        verts.push_back(std::move(x));
    }
    std::vector<RVector> facets;
    for (const auto& h1 : p1.facets())
        for (const auto& h2 : p2.facets()) {
            RVector x(g1 + g2);
            std::copy(h1.begin(), h1.end(), x.begin());
            std::copy(h2.begin(), h2.end(), x.begin() + g1);
            facets.push_back(std::move(x));
        }
    if (label.empty() && !p1.label().empty() && !p2.label().empty())
        label = p1.label() + " (+) " + p2.label();
    return Polytope::from_both(std::move(verts), std::move(facets), std::move(label));
}

/// Largest s >= 0 with s P included in Q: 1 / max_{v, h} <h_Q, v_P>.
inline Rational scaling_into(const Polytope& p, const Polytope& q) {
    if (p.g() != q.g()) throw std::invalid_argument("scaling_into: dimension mismatch");
    Rational m = 0;
    for (const auto& h : q.facets())
        for (const auto& v : p.vertices()) m = std::max(m, dot(h, v));
    if (m <= 0) throw std::logic_error("scaling_into: unbounded scaling for 0-interior target");
    return 1 / m;
}

/// Largest s with s(-P) included in P.
inline Rational symmetrization_constant(const Polytope& p) {
    Rational m = 0;
    for (const auto& h : p.facets())
        for (const auto& v : p.vertices()) m = std::max(m, -dot(h, v));
    if (m <= 0) throw std::logic_error("symmetrization_constant: degenerate polytope");
    return 1 / m;
}

} // namespace polycompat
