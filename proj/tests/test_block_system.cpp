#include "polycompat/block_system.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "polycompat/fixtures.hpp"
#include "polycompat/magic.hpp"
#include "polycompat/shared_effect.hpp"
#include "test_support.hpp"

using namespace polycompat;
using test_support::Rng;

TEST_CASE("table1 semiclassicality system is exactly infeasible") {
    auto sys = semiclassical_system(fixtures::table1_square());
    CHECK(sys.num_unknowns == 24);
    CHECK(sys.equations.size() == 16);
    auto r = range_pruned_feasibility(sys);
    REQUIRE(exactly_infeasible(r));
    CHECK(std::get<ExactlyInfeasible>(r).equation >= 0);
}

TEST_CASE("restricted shared-effect system is exactly infeasible") {
    auto [p1, p2] = fixtures::shared_effect_povms();
    auto sys = shared_effect_system(p1[0], p1[1], p2[1]);
    auto r = range_pruned_feasibility(sys);
    REQUIRE(exactly_infeasible(r));
    // the contradiction shows up in a named marginal equation
    CHECK_FALSE(std::get<ExactlyInfeasible>(r).reason.empty());
}

TEST_CASE("full-rank targets keep the system undecided") {
    BlockConstraintSystem sys;
    sys.dim = 2;
    sys.num_unknowns = 2;
    HermX half = HermX::identity(2);
    half.scale(rat(1, 2));
    sys.equations = {{{0, 1}, HermX::identity(2), "Q1+Q2 = I"},
                     {{0, 1}, HermX::identity(2), "dup"}};
    (void)half;
    CHECK(std::holds_alternative<PruneUndecided>(range_pruned_feasibility(sys)));
}

TEST_CASE("singleton equations determine unknowns and propagate") {
    // Q1 = P_e1, Q1 + Q2 = I - P_e1 is contradictory: residual not PSD
    BlockConstraintSystem sys;
    sys.dim = 2;
    sys.num_unknowns = 2;
    sys.equations = {{{0}, fixtures::proj_e1(), "Q1 = e1"},
                     {{0, 1}, HermX::identity(2) - fixtures::proj_e1(), "Q1+Q2 = e2"}};
    auto r = range_pruned_feasibility(sys);
    REQUIRE(exactly_infeasible(r));
}

TEST_CASE("rank-one reductions reach the scalar LP and find solutions") {
    // Q1 ~ e1, Q2 ~ e2 via targets; Q1 + Q2 = diag(1/2, 1/3) is feasible
    HermX target(2);
    target.set(0, 0, GRational(rat(1, 2)));
    target.set(1, 1, GRational(rat(1, 3)));
    HermX e1 = fixtures::proj_e1();
    e1.scale(rat(3, 4));
    HermX e2 = fixtures::proj_e2();
    e2.scale(rat(2, 3));
    BlockConstraintSystem sys;
    sys.dim = 2;
    sys.num_unknowns = 2;
    sys.equations = {{{0, 1}, target, "sum"},
                     {{0}, HermX::zero(2) + e1, "cap1"},
                     {{1}, HermX::zero(2) + e2, "cap2"}};
    // The singleton equations force Q1 = (3/4) e1, Q2 = (2/3) e2, which does
    // not satisfy the first equation: infeasible.
    auto r = range_pruned_feasibility(sys);
    CHECK(exactly_infeasible(r));

    // Drop the caps to rank-one support hints instead: feasible via the LP.
    BlockConstraintSystem sys2;
    sys2.dim = 2;
    sys2.num_unknowns = 2;
    HermX half_e1 = fixtures::proj_e1();
    half_e1.scale(rat(1, 2));
    HermX third_e2 = fixtures::proj_e2();
    third_e2.scale(rat(1, 3));
    sys2.equations = {{{0, 1}, target, "sum"},
                      {{0}, half_e1, "fix1"},
                      {{1}, third_e2, "fix2"}};
    auto r2 = range_pruned_feasibility(sys2);
    REQUIRE(reduced_feasible(r2));
    auto& a = std::get<ReducedFeasible>(r2).assignment;
    CHECK(a[0] == half_e1);
    CHECK(a[1] == third_e2);
}

TEST_CASE("pruning never reports infeasible on seeded-solvable systems") {
    Rng rng(13);
    auto perms = models::permutations(3);
    for (int trial = 0; trial < 30; ++trial) {
        // seed a semiclassical square from a random POVM over 6 permutations
        PovmX q = test_support::rand_povm(rng, 2, 6);
        MagicX m;
        m.n = 3;
        m.blocks.assign(9, HermX::zero(2));
        for (size_t p = 0; p < perms.size(); ++p)
            for (int i = 0; i < 3; ++i) m.at(i, perms[p][i]) += q[p];
        auto r = range_pruned_feasibility(semiclassical_system(m));
        CHECK_FALSE(exactly_infeasible(r));
        if (auto* red = std::get_if<ReducedFeasible>(&r)) {
            SemiclassicalCertificate<GRational> cert;
            cert.n = 3;
            cert.q = red->assignment;
            CHECK(verify_semiclassical(m, cert));
        }
    }
}

TEST_CASE("system validation") {
    BlockConstraintSystem sys;
    sys.dim = 2;
    sys.num_unknowns = 2;
    sys.equations = {{{0}, HermX::identity(2), "only Q1"}};
    CHECK_THROWS_AS(range_pruned_feasibility(sys), std::invalid_argument);  // Q2 unused
    sys.dim = 5;
    CHECK_THROWS_AS(range_pruned_feasibility(sys), std::invalid_argument);  // d > 4
}
