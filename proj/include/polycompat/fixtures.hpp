#pragma once

#include "polycompat/hermitian.hpp"
#include "polycompat/magic.hpp"
#include "polycompat/tuples.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace polycompat {
namespace fixtures {

inline HermX herm2(GRational a00, GRational a10, GRational a11) {
    HermX m(2);
    m.set(0, 0, a00);
    m.set(1, 0, a10);
    m.set(1, 1, a11);
    return m;
}

/// Rank-one qubit projectors onto e_1, e_2, f_1 = (e_1+e_2)/sqrt2 and
/// f_2 = (e_1-e_2)/sqrt2. All Gaussian-rational.
inline HermX proj_e1() { return herm2(GRational(1), GRational(0), GRational(0)); }
inline HermX proj_e2() { return herm2(GRational(0), GRational(0), GRational(1)); }
inline HermX proj_f1() { return herm2(grat(1, 2), grat(1, 2), grat(1, 2)); }
inline HermX proj_f2() { return herm2(grat(1, 2), grat(-1, 2), grat(1, 2)); }

inline HermX pauli_x() { return herm2(GRational(0), GRational(1), GRational(0)); }
inline HermX pauli_y() { return herm2(GRational(0), grat(0, 1, 1, 1), GRational(0)); }
inline HermX pauli_z() { return herm2(GRational(1), GRational(0), GRational(-1)); }

/// The Pauli triple (sigma_X, sigma_Y, sigma_Z).
inline TupleX pauli3() { return TupleX({pauli_x(), pauli_y(), pauli_z()}); }

/// The 4 x 4 qubit magic square built from halved rank-one projectors; its
/// row/column POVMs are compatible yet the square is not semiclassical.
inline MagicX table1_square() {
    auto half = [](HermX m) {
        m.scale(Rational(1, 2));
        return m;
    };
    HermX z = HermX::zero(2);
    HermX hi = half(HermX::identity(2));
    HermX he1 = half(proj_e1()), he2 = half(proj_e2());
    HermX hf1 = half(proj_f1()), hf2 = half(proj_f2());
    MagicX m;
    m.n = 4;
    m.blocks = {he1, he2, z, hi,  he2, he1, hi, z,  z, hi, hf1, hf2,  hi, z, hf2, hf1};
    return m;
}

/// Joint POVM whose post-processings generate every row and column of the
/// table1 square: the four halved rank-one projectors.
inline PovmX table1_joint_povm() {
    auto half = [](HermX m) {
        m.scale(Rational(1, 2));
        return m;
    };
    return make_povm<GRational>({half(proj_e1()), half(proj_e2()), half(proj_f1()),
                                 half(proj_f2())});
}

/// The two POVMs all rows/columns of the table1 square reduce to.
inline std::pair<PovmX, PovmX> table1_reduced_povms() {
    auto half = [](HermX m) {
        m.scale(Rational(1, 2));
        return m;
    };
    HermX z = HermX::zero(2);
    PovmX a = make_povm<GRational>({half(proj_e1()), half(proj_e2()), half(HermX::identity(2)), z});
    PovmX b = make_povm<GRational>({half(proj_f1()), half(proj_f2()), half(HermX::identity(2)), z});
    return {std::move(a), std::move(b)};
}

/// The shared-effect counterexample pair: two 3-outcome qubit measurements
/// with common first effect I/2.
inline std::pair<PovmX, PovmX> shared_effect_povms() {
    auto half = [](HermX m) {
        m.scale(Rational(1, 2));
        return m;
    };
    PovmX a = make_povm<GRational>({half(HermX::identity(2)), half(proj_e1()), half(proj_e2())});
    PovmX b = make_povm<GRational>({half(HermX::identity(2)), half(proj_f1()), half(proj_f2())});
    return {std::move(a), std::move(b)};
}

/// Unrestricted joint POVM for the shared-effect pair, as a row-major 3x3
/// grid with row marginals the first POVM and column marginals the second.
inline PovmX shared_effect_joint_povm() {
    auto half = [](HermX m) {
        m.scale(Rational(1, 2));
        return m;
    };
    HermX z = HermX::zero(2);
    return make_povm<GRational>(
        {z, half(proj_f1()), half(proj_f2()), half(proj_e1()), z, z, half(proj_e2()), z, z});
}

/// Tuple whose joint numerical range is the square while the matrices do
/// not commute: diag(1,1,-1,-1) (+) sigma_Z and diag(1,-1,1,-1) (+) sigma_X.
inline TupleX diag_pauli_pair() {
    HermX a1(6), a2(6);
    int sign1[4] = {1, 1, -1, -1};
    int sign2[4] = {1, -1, 1, -1};
    for (int i = 0; i < 4; ++i) {
        a1.set(i, i, GRational(sign1[i]));
        a2.set(i, i, GRational(sign2[i]));
    }
    a1.set(4, 4, GRational(1));
    a1.set(5, 5, GRational(-1));
    a2.set(5, 4, GRational(1));
    return TupleX({a1, a2});
}

inline std::vector<std::string> names() {
    return {"table1", "shared-effect-counterexample", "pauli3", "diag-pauli"};
}

} // namespace fixtures
} // namespace polycompat
