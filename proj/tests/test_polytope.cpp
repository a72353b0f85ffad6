#include "polycompat/models.hpp"
#include "polycompat/polytope.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "test_support.hpp"

using namespace polycompat;

namespace {

bool same_set(std::vector<RVector> a, std::vector<RVector> b) {
    std::sort(a.begin(), a.end(), detail::lex_less);
    std::sort(b.begin(), b.end(), detail::lex_less);
    return a == b;
}

} // namespace

TEST_CASE("from_vertices builds the interval B_2") {
    auto p = Polytope::from_vertices({{rat(1, 2)}, {rat(-1, 2)}});
    CHECK(p.g() == 1);
    CHECK(p.num_vertices() == 2);
    CHECK(same_set(p.facets(), {{rat(2)}, {rat(-2)}}));
}

TEST_CASE("from_vertices drops interior points") {
    auto p = Polytope::from_vertices(
        {{rat(1), rat(1)}, {rat(1), rat(-1)}, {rat(-1), rat(1)}, {rat(-1), rat(-1)},
         {rat(0), rat(0)}});
    CHECK(p.num_vertices() == 4);
    CHECK(p.num_facets() == 4);
}

TEST_CASE("from_vertices rejects hulls without 0 inside, with a separating facet") {
    try {
        Polytope::from_vertices({{rat(1)}, {rat(2)}});
        FAIL("expected NotInteriorError");
    } catch (const NotInteriorError& e) {
        REQUIRE(e.separating.size() == 1);
        CHECK(e.offset < 0);
        for (const auto& v : {rat(1), rat(2)}) CHECK(e.separating[0] * v <= e.offset);
    }
}

TEST_CASE("from_vertices rejects flat hulls (0 on the boundary)") {
    // triangle with 0 on an edge
    try {
        Polytope::from_vertices({{rat(-1), rat(0)}, {rat(1), rat(0)}, {rat(0), rat(1)}});
        FAIL("expected NotInteriorError");
    } catch (const NotInteriorError& e) {
        CHECK(e.offset <= 0);
        for (const auto& v : std::vector<RVector>{{rat(-1), rat(0)}, {rat(1), rat(0)},
                                                  {rat(0), rat(1)}})
            CHECK(dot(e.separating, v) <= e.offset);
    }
}

TEST_CASE("from_facets builds the k=3 simplex normals into a triangle") {
    auto p = Polytope::from_facets(
        {{rat(-3), rat(0)}, {rat(0), rat(-3)}, {rat(3), rat(3)}});
    CHECK(p.num_vertices() == 3);
    CHECK(p.contains_point({rat(0), rat(0)}).inside);
}

TEST_CASE("from_facets builds intervals and rejects unbounded data") {
    auto p = Polytope::from_facets({{rat(1)}, {rat(-1)}});
    CHECK(same_set(p.vertices(), {{rat(1)}, {rat(-1)}}));
    CHECK_THROWS_AS(Polytope::from_facets({{rat(1), rat(0)}}), UnboundedError);
}

TEST_CASE("vertex enumeration: pyramid H-rep yields the published vertices") {
    auto pyr = models::pyramid();
    auto verts = enumerate_vertices(pyr.facets());
    CHECK(same_set(verts, pyr.vertices()));
}

TEST_CASE("vertex enumeration: square and B_3") {
    auto sq = models::hypercube(2);
    CHECK(same_set(enumerate_vertices(sq.facets()), sq.vertices()));
    auto b3 = models::birkhoff_body(3);
    auto verts = enumerate_vertices(b3.facets());
    CHECK(verts.size() == 6);
    CHECK(same_set(verts, b3.vertices()));
}

TEST_CASE("facet enumeration: square, B_3, interval") {
    auto sq = models::hypercube(2);
    CHECK(same_set(enumerate_facets(sq.vertices()), sq.facets()));
    auto b3 = models::birkhoff_body(3);
    auto facets = enumerate_facets(b3.vertices());
    CHECK(facets.size() == 9);
    CHECK(same_set(facets, b3.facets()));
    CHECK(same_set(enumerate_facets({{rat(1)}, {rat(-1)}}), {{rat(1)}, {rat(-1)}}));
}

TEST_CASE("round trip reproduces the irredundant facet set on all models") {
    std::vector<Polytope> ps = {models::hypercube(1), models::hypercube(2),
                                models::hypercube(3), models::simplex_pk(3),
                                models::simplex_pk(4), models::pyramid(),
                                models::birkhoff_body(2), models::birkhoff_body(3),
                                models::polysimplex({2, 2})};
    for (const auto& p : ps) {
        auto verts = enumerate_vertices(p.facets());
        auto facets = enumerate_facets(verts);
        CHECK(same_set(verts, p.vertices()));
        CHECK(same_set(facets, p.facets()));
    }
}

TEST_CASE("polar duality") {
    auto cube = models::hypercube(2);
    auto diamond = cube.polar();
    CHECK(same_set(diamond.vertices(),
                   {{rat(1), rat(0)}, {rat(-1), rat(0)}, {rat(0), rat(1)}, {rat(0), rat(-1)}}));
    auto pyr = models::pyramid();
    CHECK(pyr.polar().polar() == pyr);
    // polar(B_2) = [-2, 2]
    auto b2 = models::birkhoff_body(2);
    CHECK(same_set(b2.polar().vertices(), {{rat(2)}, {rat(-2)}}));
}

TEST_CASE("cartesian products") {
    auto sq = cartesian_product(models::hypercube(1), models::hypercube(1));
    CHECK(sq == models::hypercube(2));
    auto ps = cartesian_product(models::simplex_pk(3), models::simplex_pk(3));
    CHECK(ps.num_vertices() == 9);
    CHECK(ps.num_facets() == 6);
}

TEST_CASE("direct sums") {
    auto diamond = direct_sum(models::hypercube(1), models::hypercube(1));
    CHECK(same_set(diamond.vertices(),
                   {{rat(1), rat(0)}, {rat(-1), rat(0)}, {rat(0), rat(1)}, {rat(0), rat(-1)}}));
    CHECK(diamond.num_facets() == 4);
    // ((-1,1) (+) (-1,1))* is the square
    CHECK(same_set(diamond.polar().vertices(), models::hypercube(2).vertices()));
    // P (+) Q sits inside P x Q vertexwise
    test_support::Rng rng(5);
    auto p = models::simplex_pk(3);
    auto q = models::hypercube(2);
    auto sum = direct_sum(p, q);
    auto prod = cartesian_product(p, q);
    for (const auto& v : sum.vertices()) CHECK(prod.contains_point(v).inside);
}

TEST_CASE("contains_point") {
    auto pyr = models::pyramid();
    CHECK(pyr.contains_point({rat(0), rat(0), rat(0)}).inside);
    CHECK(pyr.contains_point({rat(2, 3), rat(-1, 3), rat(-1, 3)}).inside);
    auto out = pyr.contains_point({rat(1), rat(1), rat(1)});
    CHECK_FALSE(out.inside);
    CHECK(out.violated_facet >= 0);
    CHECK(dot(pyr.facet(out.violated_facet), {rat(1), rat(1), rat(1)}) > 1);
    CHECK_THROWS_AS(pyr.contains_point({rat(0)}), std::invalid_argument);
}

TEST_CASE("vertices scaled by 101/100 leave the polytope") {
    for (const auto& p : {models::hypercube(2), models::pyramid(), models::birkhoff_body(3)}) {
        for (const auto& v : p.vertices()) {
            RVector w = v;
            for (auto& e : w) e *= rat(101, 100);
            CHECK_FALSE(p.contains_point(w).inside);
        }
    }
}

TEST_CASE("scaling_into") {
    auto b3 = models::birkhoff_body(3);
    auto poly = models::polysimplex({3, 3});
    CHECK(scaling_into(poly, b3) == rat(1, 4));   // 1/(N-1)^2 at N=3
    CHECK(scaling_into(b3, poly) == 1);
    CHECK(scaling_into(b3, b3) == 1);
    CHECK(scaling_into(b3.negated(), b3) == rat(1, 2));
    CHECK_THROWS_AS(scaling_into(models::hypercube(1), models::hypercube(2)),
                    std::invalid_argument);
}

TEST_CASE("scaling_into composition never exceeds 1") {
    std::vector<Polytope> ps = {models::hypercube(2), models::simplex_pk(3),
                                models::simplex_pk(3).polar()};
    for (const auto& p : ps)
        for (const auto& q : ps) CHECK(scaling_into(p, q) * scaling_into(q, p) <= 1);
}

TEST_CASE("symmetrization constants") {
    CHECK(symmetrization_constant(models::hypercube(2)) == 1);
    CHECK(symmetrization_constant(models::birkhoff_body(3)) == rat(1, 2));
    CHECK(symmetrization_constant(models::birkhoff_body(4)) == rat(1, 3));
    // pyramid: oracle = max over the 5 x 5 grid of <h_j, -v_i>
    auto pyr = models::pyramid();
    Rational grid_max = 0;
    for (const auto& h : pyr.facets())
        for (const auto& v : pyr.vertices()) {
            RVector neg = v;
            for (auto& e : neg) e = -e;
            grid_max = std::max(grid_max, dot(h, neg));
        }
    CHECK(symmetrization_constant(pyr) == 1 / grid_max);
    CHECK(symmetrization_constant(pyr) == rat(1, 2));
}

TEST_CASE("slack matrices are nonnegative with saturated columns") {
    for (const auto& p : {models::pyramid(), models::birkhoff_body(3),
                          models::polysimplex({2, 3})}) {
        const RMatrix& s = p.slack();
        for (int j = 0; j < s.rows(); ++j)
            for (int i = 0; i < s.cols(); ++i) CHECK(s.at(j, i) >= 0);
        for (int i = 0; i < s.cols(); ++i) {
            int zeros = 0;
            for (int j = 0; j < s.rows(); ++j)
                if (s.at(j, i) == 0) ++zeros;
            CHECK(zeros >= p.g());
        }
    }
}

TEST_CASE("content hash binds to representation order") {
    auto p1 = models::pyramid();
    auto p2 = models::pyramid();
    CHECK(p1.content_hash() == p2.content_hash());
    CHECK(p1.content_hash() != models::hypercube(3).content_hash());
}
