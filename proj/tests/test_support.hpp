#pragma once

// Shared generators for the property-style tests: seeded random rationals,
// Hermitian matrices, POVMs, and tuples scaled into P_max.

#include "polycompat/polycompat.hpp"

#include <random>

namespace test_support {

using namespace polycompat;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}

    long long integer(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(eng);
    }
    Rational rational(long long max_num = 4, long long max_den = 4) {
        return Rational(integer(-max_num, max_num), integer(1, max_den));
    }
    GRational grational(long long max_num = 4, long long max_den = 4) {
        return GRational(rational(max_num, max_den), rational(max_num, max_den));
    }
};

inline HermX rand_herm(Rng& rng, int d, long long max_num = 3) {
    HermX m(d);
    for (int i = 0; i < d; ++i) {
        m.set(i, i, GRational(rng.rational(max_num)));
        for (int j = 0; j < i; ++j) m.set(i, j, rng.grational(max_num));
    }
    return m;
}

/// Random PSD matrix B B^H from a random square factor.
inline HermX rand_psd(Rng& rng, int d, long long max_num = 2) {
    Mat<GRational> b(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) b.at(i, j) = rng.grational(max_num, 2);
    HermX m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j) {
            GRational s;
            for (int k = 0; k < d; ++k) s += b.at(i, k) * b.at(j, k).conj();
            m.set(i, j, s);
        }
    return m;
}

/// Random exact POVM: scaled random PSD matrices topped up with a multiple
/// of the identity. Requires d <= 8 for the exact PSD checks.
inline PovmX rand_povm(Rng& rng, int d, int k) {
    std::vector<HermX> g;
    HermX total = HermX::zero(d);
    for (int i = 0; i < k; ++i) {
        g.push_back(rand_psd(rng, d));
        total += g.back();
    }
    double top = herm_eig_max(to_float(total));
    Rational rho = top <= 1e-9 ? Rational(1) : Rational(9, 10) / Rational(static_cast<long long>(top * 1024) + 1, 1024);
    for (;;) {
        HermX scaled_total = total;
        scaled_total.scale(rho);
        if (psd_check(HermX::identity(d) - scaled_total)) break;
        rho /= 2;
    }
    HermX rest = HermX::identity(d);
    for (auto& m : g) {
        m.scale(rho);
        rest -= m;
    }
    rest.scale(Rational(1, k));
    for (auto& m : g) m += rest;
    return make_povm(std::move(g));
}

/// Random tuple scaled exactly into P_max (strictly inside when inside=true,
/// strictly outside otherwise whenever the raw tuple pokes out at all).
inline TupleX rand_tuple_scaled(Rng& rng, const Polytope& p, int d, bool inside) {
    for (;;) {
        std::vector<HermX> ms;
        for (int x = 0; x < p.g(); ++x) ms.push_back(rand_herm(rng, d));
        TupleX a(std::move(ms));
        double worst = 0;
        for (int j = 0; j < p.num_facets(); ++j) {
            HermF block = to_float(facet_block(p, a, j));
            // block = I - sum h A; membership needs min eig >= 0, so the
            // relevant stretch is max eig of (I - block).
            HermF stretched = HermF::identity(d) - block;
            worst = std::max(worst, herm_eig_max(stretched));
        }
        if (worst < 1e-6) {
            if (inside) return a;  // already deep inside every halfspace
            continue;
        }
        Rational rho(static_cast<long long>((inside ? 0.9 : 1.5) / worst * 1024), 1024);
        if (rho <= 0) continue;
        TupleX scaled_a = scaled(a, rho);
        bool member = pmax_check(p, scaled_a).member;
        if (member == inside) return scaled_a;
        if (inside) {
            for (int tries = 0; tries < 20 && !member; ++tries) {
                rho /= 2;
                scaled_a = scaled(a, rho);
                member = pmax_check(p, scaled_a).member;
            }
            if (member) return scaled_a;
        }
    }
}

/// Random certificate-backed P_min member: a random POVM over the vertices
/// defines the tuple it certifies.
inline std::pair<TupleX, PovmX> rand_pmin_member(Rng& rng, const Polytope& p, int d) {
    PovmX c = rand_povm(rng, d, p.num_vertices());
    std::vector<HermX> a;
    for (int x = 0; x < p.g(); ++x) {
        HermX s = HermX::zero(d);
        for (int i = 0; i < p.num_vertices(); ++i) {
            HermX m = c[i];
            m.scale(p.vertex(i)[x]);
            s += m;
        }
        a.push_back(std::move(s));
    }
    return {TupleX(std::move(a)), std::move(c)};
}

} // namespace test_support
