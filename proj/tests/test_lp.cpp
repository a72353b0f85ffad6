#include "polycompat/lp.hpp"
#include "polycompat/models.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace polycompat;

namespace {

// maximize <c, x> s.t. ax <= b, x >= 0 in slack form.
LpProblem ineq_problem(const RMatrix& a, const RVector& b, const RVector& c) {
    const int m = a.rows(), n = a.cols();
    LpProblem p;
    p.objective = c;
    p.objective.resize(n + m, Rational(0));
    p.eq_lhs = RMatrix(m, n + m);
    p.eq_rhs = b;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) p.eq_lhs.at(i, j) = a.at(i, j);
        p.eq_lhs.at(i, n + i) = 1;
    }
    return p;
}

} // namespace

TEST_CASE("maximize x subject to x <= 1") {
    auto p = ineq_problem(RMatrix(1, 1, {rat(1)}), {rat(1)}, {rat(1)});
    auto r = lp_solve(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == 1);
    CHECK(r.point[0] == 1);
}

TEST_CASE("maximize x with no upper constraint is unbounded") {
    LpProblem p;
    p.objective = {rat(1), rat(0)};
    p.eq_lhs = RMatrix(1, 2, {rat(0), rat(1)});
    p.eq_rhs = {rat(1)};
    CHECK(lp_solve(p).status == LpStatus::Unbounded);
}

TEST_CASE("the Birkhoff feasibility system at N=3, s=1/2 is feasible") {
    auto cert = lp_feasible_scaling(models::birkhoff_body(3), RVector(4, rat(1, 2)));
    REQUIRE(cert.has_value());
    CHECK(cert->verifies(models::birkhoff_body(3)));
}

TEST_CASE("infeasible systems come with an exact Farkas certificate") {
    // x1 + x2 = 1, x1 + x2 = 3 with x >= 0
    RMatrix a(2, 2, {rat(1), rat(1), rat(1), rat(1)});
    RVector b{rat(1), rat(3)};
    auto r = lp_feasible(a, b);
    REQUIRE(r.status == LpStatus::Infeasible);
    // y^T A <= 0 columnwise and y^T b > 0
    for (int j = 0; j < 2; ++j) {
        Rational col = r.duals[0] * a.at(0, j) + r.duals[1] * a.at(1, j);
        CHECK(col <= 0);
    }
    CHECK(r.duals[0] * b[0] + r.duals[1] * b[1] > 0);
}

TEST_CASE("free variables are handled by splitting") {
    // maximize -y with x free: x = -5 allowed; constraint x + y = -5, y >= 0
    LpProblem p;
    p.objective = {rat(0), rat(-1)};
    p.eq_lhs = RMatrix(1, 2, {rat(1), rat(1)});
    p.eq_rhs = {rat(-5)};
    p.nonneg = {false, true};
    auto r = lp_solve(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == 0);
    CHECK(r.point[0] == rat(-5));
}

TEST_CASE("optimal points satisfy all constraints exactly") {
    test_support::Rng rng(7);
    int solved = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int m = static_cast<int>(rng.integer(1, 4));
        int n = static_cast<int>(rng.integer(1, 5));
        RMatrix a(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = rng.rational();
        // rhs from a random nonnegative feasible point keeps it feasible
        RVector x0(n);
        for (auto& e : x0) e = Rational(rng.integer(0, 3), rng.integer(1, 3));
        RVector b = mat_vec(a, x0);
        RVector c(n);
        for (auto& e : c) e = rng.rational();
        LpProblem p;
        p.objective = c;
        p.eq_lhs = a;
        p.eq_rhs = b;
        auto r = lp_solve(p);
        REQUIRE(r.status != LpStatus::Infeasible);
        if (r.status != LpStatus::Optimal) continue;
        ++solved;
        CHECK(mat_vec(a, r.point) == b);
        for (const auto& e : r.point) CHECK(e >= 0);
        CHECK(dot(c, r.point) == r.value);
        CHECK(dot(c, r.point) >= dot(c, x0));  // no worse than the seed point
    }
    CHECK(solved > 10);
}

TEST_CASE("dimension mismatches are rejected") {
    LpProblem p;
    p.objective = {rat(1)};
    p.eq_lhs = RMatrix(1, 2);
    p.eq_rhs = {rat(0)};
    CHECK_THROWS_AS(lp_solve(p), std::invalid_argument);
}
