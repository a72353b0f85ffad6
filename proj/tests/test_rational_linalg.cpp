#include "polycompat/matrix.hpp"
#include "polycompat/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace polycompat;

TEST_CASE("rational basics") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(-2, 4) == rat(-1, 2));
    CHECK(rat_den(rat(3, -6)) == 2);  // denominator stays positive
    CHECK(to_string(rat(-1, 3)) == "-1/3");
    CHECK(parse_rational("-7/21") == rat(-1, 3));
    CHECK(parse_rational("5") == rat(5));
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("gaussian rational field ops") {
    GRational i(Rational(0), Rational(1));
    CHECK(i * i == GRational(Rational(-1)));
    GRational z = grat(1, 2, -1, 3);
    CHECK(z * z.conj() == GRational(z.norm2()));
    CHECK((z / z) == GRational(Rational(1)));
    CHECK(z + (-z) == GRational());
}

TEST_CASE("rat_solve identity case") {
    RMatrix a = RMatrix::identity(2);
    auto r = solve(a, RVector{rat(1, 2), rat(-1, 3)});
    REQUIRE(r.status == SolveStatus::Unique);
    CHECK(r.particular == RVector{rat(1, 2), rat(-1, 3)});
}

TEST_CASE("rat_solve rank-1 system has particular solution and null basis") {
    RMatrix a(2, 2, {rat(1), rat(1), rat(2), rat(2)});
    auto r = solve(a, RVector{rat(1), rat(2)});
    REQUIRE(r.status == SolveStatus::Underdetermined);
    CHECK(mat_vec(a, r.particular) == RVector{rat(1), rat(2)});
    REQUIRE(r.null_basis.cols() == 1);
    // basis spans {(1, -1)}
    CHECK(r.null_basis.at(0, 0) == -r.null_basis.at(1, 0));
    CHECK(r.null_basis.at(0, 0) != 0);
}

TEST_CASE("rat_solve flags inconsistency exactly") {
    RMatrix a(2, 2, {rat(1), rat(1), rat(2), rat(2)});
    auto r = solve(a, RVector{rat(1), rat(3)});
    CHECK(r.status == SolveStatus::Inconsistent);
    CHECK_FALSE(r.ok());
}

TEST_CASE("nullspace of the pyramid incidence matrix is 3-dimensional") {
    // edges {1,2,3} and {1,4,5} over 5 vertices
    RMatrix inc(2, 5);
    for (int v : {0, 1, 2}) inc.at(0, v) = 1;
    for (int v : {0, 3, 4}) inc.at(1, v) = 1;
    Mat<Rational> ns = nullspace(inc);
    REQUIRE(ns.cols() == 3);
    // the published basis spans the same space: each element is killed by inc
    std::vector<RVector> paper = {{rat(1), rat(0), rat(-1), rat(0), rat(-1)},
                                  {rat(0), rat(1), rat(-1), rat(0), rat(0)},
                                  {rat(0), rat(0), rat(0), rat(1), rat(-1)}};
    for (const auto& b : paper) CHECK(mat_vec(inc, b) == RVector(2, rat(0)));
    // and the computed basis columns are killed too
    for (int c = 0; c < 3; ++c) {
        RVector col(5);
        for (int i = 0; i < 5; ++i) col[i] = ns.at(i, c);
        CHECK(mat_vec(inc, col) == RVector(2, rat(0)));
    }
}

TEST_CASE("nullspace edge cases") {
    RMatrix inv(3, 3, {rat(2), rat(0), rat(1), rat(0), rat(1), rat(0), rat(1), rat(0), rat(1)});
    CHECK(nullspace(inv).cols() == 0);
    RMatrix zero(2, 3);
    CHECK(nullspace(zero).cols() == 3);
}

TEST_CASE("solution plus any nullspace combination re-satisfies A x = b") {
    test_support::Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        int m = static_cast<int>(rng.integer(1, 4));
        int n = static_cast<int>(rng.integer(1, 5));
        RMatrix a(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = rng.rational();
        RVector x(n);
        for (auto& e : x) e = rng.rational();
        RVector b = mat_vec(a, x);  // consistent by construction
        auto r = solve(a, b);
        REQUIRE(r.ok());
        RVector y = r.particular;
        for (int c = 0; c < r.null_basis.cols(); ++c) {
            Rational w = rng.rational();
            for (int j = 0; j < n; ++j) y[j] += w * r.null_basis.at(j, c);
        }
        CHECK(mat_vec(a, y) == b);
    }
}

TEST_CASE("inverse and determinant") {
    RMatrix a(2, 2, {rat(1), rat(2), rat(3), rat(4)});
    CHECK(determinant(a) == rat(-2));
    auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK(a * *inv == RMatrix::identity(2));
    RMatrix sing(2, 2, {rat(1), rat(2), rat(2), rat(4)});
    CHECK(determinant(sing) == 0);
    CHECK_FALSE(inverse(sing).has_value());
}

TEST_CASE("subspace intersection over the gaussian rationals") {
    // span{e1} meet span{(1,1)} = {0}; span{e1,e2} meet span{e1} = span{e1}
    Mat<GRational> e1(2, 1);
    e1.at(0, 0) = GRational(Rational(1));
    Mat<GRational> diag(2, 1);
    diag.at(0, 0) = GRational(Rational(1));
    diag.at(1, 0) = GRational(Rational(1));
    CHECK(subspace_intersection(e1, diag).cols() == 0);
    Mat<GRational> full = column_space(Mat<GRational>::identity(2));
    auto meet = subspace_intersection(full, e1);
    REQUIRE(meet.cols() == 1);
    CHECK(!field_is_zero(meet.at(0, 0)));
    CHECK(field_is_zero(meet.at(1, 0)));
}
