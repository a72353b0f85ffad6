#include "polycompat/eig.hpp"
#include "polycompat/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace polycompat;
using test_support::Rng;

TEST_CASE("herm_eig_min on known spectra") {
    HermF diag(2);
    diag.set(0, 0, 1.0);
    diag.set(1, 1, -2.0);
    CHECK(herm_eig_min(diag) == Catch::Approx(-2.0).margin(1e-13));

    CHECK(herm_eig_min(to_float(fixtures::pauli_x())) == Catch::Approx(-1.0).margin(1e-13));
    CHECK(herm_eig_min(to_float(fixtures::pauli_y())) == Catch::Approx(-1.0).margin(1e-13));

    // rank-one projector onto f1: eigenvalues {0, 1}
    CHECK(herm_eig_min(to_float(fixtures::proj_f1())) == Catch::Approx(0.0).margin(1e-13));
}

TEST_CASE("jacobi eigensystem reproduces the matrix") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int d = static_cast<int>(rng.integer(1, 6));
        HermF h = to_float(test_support::rand_herm(rng, d));
        auto e = jacobi_eigen(h);
        // residual || H v - lambda v || per eigenpair
        for (int k = 0; k < d; ++k) {
            double resid = 0;
            for (int i = 0; i < d; ++i) {
                CDouble hv = 0;
                for (int j = 0; j < d; ++j) hv += h(i, j) * e.vectors.at(j, k);
                resid += std::norm(hv - e.values[k] * e.vectors.at(i, k));
            }
            CHECK(std::sqrt(resid) < 1e-11);
        }
        // unitarity of the eigenvector matrix
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                CDouble dotp = 0;
                for (int i = 0; i < d; ++i)
                    dotp += std::conj(e.vectors.at(i, a)) * e.vectors.at(i, b);
                CHECK(std::abs(dotp - (a == b ? 1.0 : 0.0)) < 1e-12);
            }
    }
}

TEST_CASE("accuracy at d = 16 on a known block spectrum") {
    // 8 Pauli-X blocks scaled by 1..8: spectrum {+-1, ..., +-8}
    HermF h(16);
    for (int b = 0; b < 8; ++b) {
        h.set(2 * b + 1, 2 * b, CDouble(b + 1.0, 0.0));
    }
    auto e = jacobi_eigen(h);
    CHECK(e.values.front() == Catch::Approx(-8.0).epsilon(1e-12));
    CHECK(e.values.back() == Catch::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("psd_check exact on small examples") {
    // (1/2) [[1,1],[1,1]] is rank-one PSD
    CHECK(psd_check(fixtures::proj_f1()));
    HermX bad(2);
    bad.set(1, 1, GRational(rat(-1, 10)));
    CHECK_FALSE(psd_check(bad));
    // I - sigma_X has eigenvalues {0, 2}
    CHECK(psd_check(HermX::identity(2) - fixtures::pauli_x()));
    // exact check refuses d > 8
    CHECK_THROWS_AS(psd_check(HermX(9)), std::invalid_argument);
}

TEST_CASE("exact and float psd_check agree away from the boundary") {
    Rng rng(23);
    int done = 0;
    while (done < 200) {
        int d = static_cast<int>(rng.integer(1, 4));
        HermX h = test_support::rand_herm(rng, d);
        double lo = herm_eig_min(to_float(h));
        if (std::abs(lo) < 1e-3) continue;  // too close to the cone boundary
        ++done;
        CHECK(psd_check(h) == psd_check(to_float(h)));
    }
}

TEST_CASE("psd_project clamps negative eigenvalues") {
    HermF diag(2);
    diag.set(0, 0, 1.0);
    diag.set(1, 1, -1.0);
    HermF proj = psd_project(diag);
    CHECK(std::abs(proj(0, 0).real() - 1.0) < 1e-12);
    CHECK(std::abs(proj(1, 1).real()) < 1e-12);

    HermF already = to_float(fixtures::proj_f1());
    CHECK(max_abs_diff(psd_project(already), already) < 1e-12);

    HermF negident = HermF::identity(2);
    negident.scale(-1.0);
    CHECK(frobenius_norm(psd_project(negident)) < 1e-12);
}

TEST_CASE("psd_project is idempotent and non-expansive under repetition") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        int d = static_cast<int>(rng.integer(1, 5));
        HermF h = to_float(test_support::rand_herm(rng, d));
        HermF p1 = psd_project(h);
        HermF p2 = psd_project(p1);
        CHECK(psd_check(p1, 1e-9));
        CHECK(max_abs_diff(p1, p2) < 1e-11);
        CHECK(frobenius_dist(p2, h) <= frobenius_dist(p1, h) + 1e-11);
    }
}
