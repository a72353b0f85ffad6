#include "polycompat/models.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace polycompat;

TEST_CASE("hypercube models") {
    auto h1 = models::hypercube(1);
    CHECK(h1.vertices() == std::vector<RVector>{{rat(-1)}, {rat(1)}});
    auto h3 = models::hypercube(3);
    CHECK(h3.num_vertices() == 8);
    CHECK(h3.num_facets() == 6);
    CHECK_THROWS_AS(models::hypercube(0), std::invalid_argument);
}

TEST_CASE("simplex_pk models") {
    auto p2 = models::simplex_pk(2);
    CHECK(p2.vertices() == std::vector<RVector>{{rat(1, 2)}, {rat(-1, 2)}});
    auto p3 = models::simplex_pk(3);
    CHECK(p3.num_vertices() == 3);
    CHECK(p3.num_facets() == 3);
    // every vertex saturates all facets but one
    for (int i = 0; i < 3; ++i) {
        int sat = 0;
        for (int j = 0; j < 3; ++j)
            if (dot(p3.facet(j), p3.vertex(i)) == 1) ++sat;
        CHECK(sat == 2);
    }
    CHECK_THROWS_AS(models::simplex_pk(1), std::invalid_argument);
}

TEST_CASE("polysimplex vertex order nests first factor slowest") {
    auto p = models::polysimplex({2, 3});
    CHECK(p.g() == 3);
    CHECK(p.num_vertices() == 6);
    CHECK(p.num_facets() == 5);
    auto p2 = models::simplex_pk(2);
    auto p3 = models::simplex_pk(3);
    int idx = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j, ++idx) {
            CHECK(p.vertex(idx)[0] == p2.vertex(i)[0]);
            CHECK(p.vertex(idx)[1] == p3.vertex(j)[0]);
            CHECK(p.vertex(idx)[2] == p3.vertex(j)[1]);
        }
}

TEST_CASE("pyramid matches the published extended matrices") {
    auto pyr = models::pyramid();
    REQUIRE(pyr.num_vertices() == 5);
    REQUIRE(pyr.num_facets() == 5);
    // first column of vhat is (2/3, -1/3, -1/3, 1)
    CHECK(pyr.vhat().at(0, 0) == rat(2, 3));
    CHECK(pyr.vhat().at(1, 0) == rat(-1, 3));
    CHECK(pyr.vhat().at(2, 0) == rat(-1, 3));
    CHECK(pyr.vhat().at(3, 0) == rat(1));
    // hhat rows are [-H | 1] for the published H
    CHECK(pyr.hhat().at(0, 0) == rat(3));
    CHECK(pyr.hhat().at(3, 0) == rat(-3));
    CHECK(pyr.hhat().at(3, 1) == rat(-3));
    CHECK(pyr.hhat().at(4, 2) == rat(-3));
    for (int j = 0; j < 5; ++j) CHECK(pyr.hhat().at(j, 3) == 1);
}

TEST_CASE("birkhoff bodies") {
    auto b2 = models::birkhoff_body(2);
    CHECK(b2.vertices() == std::vector<RVector>{{rat(1, 2)}, {rat(-1, 2)}});
    CHECK(b2.num_facets() == 2);

    auto b3 = models::birkhoff_body(3);
    CHECK(b3.num_vertices() == 6);
    CHECK(b3.num_facets() == 9);
    // slack entries lie in {0, N}: <h, v> is 1 or 1 - N
    for (int j = 0; j < 9; ++j)
        for (int i = 0; i < 6; ++i) {
            Rational s = b3.slack().at(j, i);
            CHECK((s == 0 || s == 3));
        }

    auto b4 = models::birkhoff_body(4);
    CHECK(b4.num_vertices() == 24);
    CHECK(b4.num_facets() == 16);
    CHECK_THROWS_AS(models::birkhoff_body(1), std::invalid_argument);
    CHECK_THROWS_AS(models::birkhoff_body(6), std::invalid_argument);
}

TEST_CASE("birkhoff vertices are shifted truncated permutation matrices") {
    auto b3 = models::birkhoff_body(3);
    auto perms = models::permutations(3);
    REQUIRE(perms.size() == 6);
    // lexicographic order of permutations
    CHECK(perms.front() == std::vector<int>{0, 1, 2});
    CHECK(perms.back() == std::vector<int>{2, 1, 0});
    for (size_t p = 0; p < perms.size(); ++p)
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                CHECK(b3.vertex(static_cast<int>(p))[x * 2 + y] ==
                      Rational(perms[p][x] == y ? 1 : 0) - rat(1, 3));
}

TEST_CASE("birkhoff_T identities") {
    for (int n = 2; n <= 4; ++n) {
        auto cert = models::birkhoff_T(n);
        CHECK(cert.verifies(models::birkhoff_body(n)));
        CHECK(cert.s() == RVector(static_cast<size_t>((n - 1) * (n - 1)), Rational(1, n - 1)));
    }
}

TEST_CASE("birkhoff_T(3) has the published entry pattern") {
    auto cert = models::birkhoff_T(3);
    const RMatrix& t = cert.t();
    REQUIRE(t.rows() == 6);
    REQUIRE(t.cols() == 9);
    for (int i = 0; i < 6; ++i) {
        Rational row_sum = 0;
        int nonzeros = 0;
        for (int j = 0; j < 9; ++j) {
            CHECK((t.at(i, j) == 0 || t.at(i, j) == rat(1, 18)));
            row_sum += t.at(i, j);
            if (t.at(i, j) != 0) ++nonzeros;
        }
        CHECK(row_sum == rat(1, 6));  // 1/N!
        CHECK(nonzeros == 3);         // precisely N nonzero entries
    }
}

TEST_CASE("pyramid_T reproduces diag(2/5, 2/5, 2/5, 1)") {
    auto cert = models::pyramid_T();
    auto pyr = models::pyramid();
    CHECK(cert.verifies(pyr));
    RMatrix lhs = pyr.vhat() * cert.t() * pyr.hhat();
    CHECK(lhs == ScalingCertificate::dhat(3, RVector(3, rat(2, 5))));
}
