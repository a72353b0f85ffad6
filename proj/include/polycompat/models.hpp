#pragma once

#include "polycompat/inclusion.hpp"
#include "polycompat/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace polycompat {
namespace models {

/// [-1,1]^g. Vertices are sign vectors in lexicographic order; facets come
/// paired (+e_x, -e_x) per coordinate.
inline Polytope hypercube(int g) {
    if (g < 1) throw std::invalid_argument("hypercube: g >= 1 required");
    if (g > 16) throw std::invalid_argument("hypercube: g too large");
    std::vector<RVector> verts;
    verts.reserve(1u << g);
    for (unsigned long long m = 0; m < (1ull << g); ++m) {
        RVector v(g);
        for (int x = 0; x < g; ++x) v[x] = (m >> (g - 1 - x)) & 1 ? 1 : -1;
        verts.push_back(std::move(v));
    }
    std::vector<RVector> facets;
    for (int x = 0; x < g; ++x) {
        RVector h(g);
        h[x] = 1;
        facets.push_back(h);
        h[x] = -1;
        facets.push_back(h);
    }
    return Polytope::from_both(std::move(verts), std::move(facets),
                               "hypercube(" + std::to_string(g) + ")");
}

/// The shifted k-outcome simplex P_k in R^{k-1}: facets <-k e_j, x> <= 1 for
/// j < k-1 plus <k 1, x> <= 1; vertices e_j - (1/k) 1 and -(1/k) 1 last.
inline Polytope simplex_pk(int k) {
    if (k < 2) throw std::invalid_argument("simplex_pk: k >= 2 required");
    const int g = k - 1;
    std::vector<RVector> verts;
    for (int j = 0; j < g; ++j) {
        RVector v(g, Rational(-1) / k);
        v[j] += 1;
        verts.push_back(std::move(v));
    }
    verts.push_back(RVector(g, Rational(-1) / k));
    std::vector<RVector> facets;
    for (int j = 0; j < g; ++j) {
        RVector h(g);
        h[j] = -k;
        facets.push_back(std::move(h));
    }
    facets.push_back(RVector(g, Rational(k)));
    return Polytope::from_both(std::move(verts), std::move(facets),
                               "P_" + std::to_string(k));
}

/// Cartesian product of simplices P_{k_1} x ... x P_{k_g}; vertex order nests
/// with the first factor slowest.
inline Polytope polysimplex(const std::vector<int>& ks) {
    if (ks.empty()) throw std::invalid_argument("polysimplex: no factors");
    Polytope p = simplex_pk(ks[0]);
    for (size_t i = 1; i < ks.size(); ++i) p = cartesian_product(p, simplex_pk(ks[i]));
    return p;
}

/// Pyramid with square base arising from two 3-outcome measurements sharing
/// an effect. Vertex and facet order are fixed by the published extended
/// matrices, not the lexicographic convention.
inline Polytope pyramid() {
    auto third = [](long long n) { return Rational(n, 3); };
    std::vector<RVector> verts = {
        {third(2), third(-1), third(-1)}, {third(-1), third(-1), third(-1)},
        {third(-1), third(-1), third(2)}, {third(-1), third(2), third(-1)},
        {third(-1), third(2), third(2)}};
    std::vector<RVector> facets = {{Rational(-3), Rational(0), Rational(0)},
                                   {Rational(0), Rational(-3), Rational(0)},
                                   {Rational(0), Rational(0), Rational(-3)},
                                   {Rational(3), Rational(3), Rational(0)},
                                   {Rational(3), Rational(0), Rational(3)}};
    return Polytope::from_both(std::move(verts), std::move(facets), "pyramid");
}

/// The published pyramid inclusion certificate: s = (2/5, 2/5, 2/5) with
/// T = (1/30) [[6,1,1,1,1],[1,0,0,2,2],[1,0,2,2,0],[1,2,0,0,2],[1,2,2,0,0]].
inline ScalingCertificate pyramid_T() {
    const int rows[5][5] = {{6, 1, 1, 1, 1},
                            {1, 0, 0, 2, 2},
                            {1, 0, 2, 2, 0},
                            {1, 2, 0, 0, 2},
                            {1, 2, 2, 0, 0}};
    RMatrix t(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) t.at(i, j) = Rational(rows[i][j], 30);
    return ScalingCertificate(pyramid(), RVector(3, Rational(2, 5)), std::move(t));
}

/// All permutations of {0,...,n-1} in lexicographic order.
inline std::vector<std::vector<int>> permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

namespace detail {

/// Raw Birkhoff facet functional indexed by (i, j) in [N]^2 (0-based).
inline RVector birkhoff_facet(int n, int i, int j) {
    const int g = (n - 1) * (n - 1);
    RVector h(g);
    auto at = [&](int x, int y) -> Rational& { return h[x * (n - 1) + y]; };
    if (i < n - 1 && j < n - 1) {
        at(i, j) = -n;
    } else if (i < n - 1) {
        for (int y = 0; y < n - 1; ++y) at(i, y) = n;
    } else if (j < n - 1) {
        for (int x = 0; x < n - 1; ++x) at(x, j) = n;
    } else {
        for (auto& e : h) e = -n;
    }
    return h;
}

} // namespace detail

/// Birkhoff body B_N: shifted truncations of bistochastic matrices.
/// Vertices are the N! shifted truncated permutation matrices (permutations
/// in lexicographic order, truncation flattened row-major); facets are the
/// N^2 bistochasticity functionals with duplicates merged (N = 2 keeps 2).
inline Polytope birkhoff_body(int n) {
    if (n < 2 || n > 5) throw std::invalid_argument("birkhoff_body: 2 <= N <= 5 required");
    const int g = (n - 1) * (n - 1);
    std::vector<RVector> verts;
    for (const auto& perm : permutations(n)) {
        RVector v(g);
        for (int x = 0; x < n - 1; ++x)
            for (int y = 0; y < n - 1; ++y)
                v[x * (n - 1) + y] = Rational(perm[x] == y ? 1 : 0) - Rational(1, n);
        verts.push_back(std::move(v));
    }
    std::vector<RVector> facets;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RVector h = detail::birkhoff_facet(n, i, j);
            if (std::find(facets.begin(), facets.end(), h) == facets.end())
                facets.push_back(std::move(h));
        }
    return Polytope::from_both(std::move(verts), std::move(facets),
                               "B_" + std::to_string(n));
}

/// The published inclusion certificate for B_N: s = 1/(N-1) flat and
/// T[pi][(i,j)] = 1 / (N N!) exactly when <h_ij, v_pi> != 1, i.e. pi(i) = j.
/// Facet-merged duplicates (N = 2) accumulate their columns.
inline ScalingCertificate birkhoff_T(int n) {
    Polytope b = birkhoff_body(n);
    const int k = b.num_vertices();
    const int r = b.num_facets();
    RMatrix t(k, r);
    const Rational w = Rational(1) / (Rational(n) * factorial(n));
    auto perms = permutations(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RVector h = detail::birkhoff_facet(n, i, j);
            int col = -1;
            for (int c = 0; c < r; ++c)
                if (b.facet(c) == h) { col = c; break; }
            for (int vi = 0; vi < k; ++vi)
                if (perms[vi][i] == j) t.at(vi, col) += w;
        }
    RVector s(b.g(), Rational(1) / (n - 1));
    // Constructor re-verifies vhat T hhat = D_s exactly; a failure here would
    // signal an index-order bug.
    return ScalingCertificate(b, std::move(s), std::move(t));
}

} // namespace models
} // namespace polycompat
