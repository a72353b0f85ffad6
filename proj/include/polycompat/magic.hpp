#pragma once

#include "polycompat/block_system.hpp"
#include "polycompat/models.hpp"
#include "polycompat/tuples.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polycompat {

/// N x N grid of PSD blocks whose rows and columns all sum to the identity.
template <typename S>
struct MagicSquare {
    int n = 0;
    std::vector<HermMatrix<S>> blocks;  // row-major

    int dim() const { return blocks.empty() ? 0 : blocks.front().dim(); }
    const HermMatrix<S>& at(int i, int j) const { return blocks[i * n + j]; }
    HermMatrix<S>& at(int i, int j) { return blocks[i * n + j]; }

    friend bool operator==(const MagicSquare& a, const MagicSquare& b) {
        return a.n == b.n && a.blocks == b.blocks;
    }
};

using MagicX = MagicSquare<GRational>;
using MagicF = MagicSquare<CDouble>;

struct MagicViolation {
    std::string what;  // first violated constraint
};

/// Validates bistochasticity and PSD-ness of a block grid.
template <typename S>
std::variant<MagicSquare<S>, MagicViolation> magic_check(int n,
                                                         std::vector<HermMatrix<S>> blocks,
                                                         double tol = kPsdTol) {
    if (n < 1 || static_cast<int>(blocks.size()) != n * n)
        throw std::invalid_argument("magic_check: grid shape mismatch");
    const int d = blocks.front().dim();
    for (const auto& b : blocks)
        if (b.dim() != d) throw std::invalid_argument("magic_check: mixed block dimensions");

    auto is_identity = [&](const HermMatrix<S>& m) {
        if constexpr (scalar_traits<S>::exact)
            return m == HermMatrix<S>::identity(d);
        else
            return max_abs_diff(m, HermMatrix<S>::identity(d)) <= tol;
    };
    auto is_psd = [&](const HermMatrix<S>& m) {
        if constexpr (scalar_traits<S>::exact)
            return psd_check(m);
        else
            return psd_check(m, tol);
    };

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!is_psd(blocks[i * n + j]))
                return MagicViolation{"block (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") is not PSD"};
    for (int i = 0; i < n; ++i) {
        HermMatrix<S> row = HermMatrix<S>::zero(d);
        for (int j = 0; j < n; ++j) row += blocks[i * n + j];
        if (!is_identity(row)) return MagicViolation{"row " + std::to_string(i) + " sum != I"};
    }
    for (int j = 0; j < n; ++j) {
        HermMatrix<S> col = HermMatrix<S>::zero(d);
        for (int i = 0; i < n; ++i) col += blocks[i * n + j];
        if (!is_identity(col)) return MagicViolation{"column " + std::to_string(j) + " sum != I"};
    }
    MagicSquare<S> m;
    m.n = n;
    m.blocks = std::move(blocks);
    return m;
}

/// Shifted truncation: A_{xy} = M_{xy} - I/N for x, y < N-1, row-major.
/// The image lies in (B_N)_max exactly when M is a magic square.
template <typename S>
HermTuple<S> truncate_shift(const MagicSquare<S>& m) {
    const int n = m.n;
    const int d = m.dim();
    std::vector<HermMatrix<S>> out;
    HermMatrix<S> shift = HermMatrix<S>::identity(d);
    shift.scale(backend_real<S>(Rational(-1, n)));
    for (int x = 0; x + 1 < n; ++x)
        for (int y = 0; y + 1 < n; ++y) out.push_back(m.at(x, y) + shift);
    return HermTuple<S>(std::move(out));
}

/// Inverse of truncate_shift: rebuilds the unique grid with row and column
/// sums I from a (N-1)^2 tuple.
template <typename S>
MagicSquare<S> tilde_map(const HermTuple<S>& a, int n) {
    if (a.g() != (n - 1) * (n - 1))
        throw std::invalid_argument("tilde_map: tuple length is not (N-1)^2");
    const int d = a.dim();
    MagicSquare<S> m;
    m.n = n;
    m.blocks.assign(static_cast<size_t>(n) * n, HermMatrix<S>::zero(d));
    HermMatrix<S> ninth = HermMatrix<S>::identity(d);
    ninth.scale(backend_real<S>(Rational(1, n)));
    auto x_at = [&](int i, int j) { return a[i * (n - 1) + j]; };
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) m.at(i, j) = ninth + x_at(i, j);
    for (int i = 0; i < n - 1; ++i) {
        HermMatrix<S> s = ninth;
        for (int k = 0; k < n - 1; ++k) s -= x_at(i, k);
        m.at(i, n - 1) = s;
    }
    for (int j = 0; j < n - 1; ++j) {
        HermMatrix<S> s = ninth;
        for (int k = 0; k < n - 1; ++k) s -= x_at(k, j);
        m.at(n - 1, j) = s;
    }
    HermMatrix<S> corner = ninth;
    for (int k = 0; k < n - 1; ++k)
        for (int l = 0; l < n - 1; ++l) corner += x_at(k, l);
    m.at(n - 1, n - 1) = corner;
    return m;
}

/// POVM indexed by the permutations of [N] in lexicographic order with
/// M = sum_pi P_pi (x) Q_pi.
template <typename S>
struct SemiclassicalCertificate {
    int n = 0;
    std::vector<HermMatrix<S>> q;  // N! entries, lex order
};

template <typename S>
bool verify_semiclassical(const MagicSquare<S>& m, const SemiclassicalCertificate<S>& cert,
                          double tol = kPsdTol) {
    const auto perms = models::permutations(m.n);
    if (cert.n != m.n || cert.q.size() != perms.size()) return false;
    const int d = m.dim();
    for (const auto& q : cert.q) {
        if constexpr (scalar_traits<S>::exact) {
            if (!psd_check(q)) return false;
        } else {
            if (!psd_check(q, tol)) return false;
        }
    }
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) {
            HermMatrix<S> s = HermMatrix<S>::zero(d);
            for (size_t p = 0; p < perms.size(); ++p)
                if (perms[p][i] == j) s += cert.q[p];
            if constexpr (scalar_traits<S>::exact) {
                if (!(s == m.at(i, j))) return false;
            } else {
                if (max_abs_diff(s, m.at(i, j)) > tol) return false;
            }
        }
    return true;
}

/// The semiclassicality equations M_{ij} = sum_{pi(i) = j} Q_pi as a block
/// constraint system (exact backend).
inline BlockConstraintSystem semiclassical_system(const MagicX& m) {
    const auto perms = models::permutations(m.n);
    BlockConstraintSystem sys;
    sys.dim = m.dim();
    sys.num_unknowns = static_cast<int>(perms.size());
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) {
            BlockConstraintSystem::Equation eq;
            eq.target = m.at(i, j);
            eq.name = "M(" + std::to_string(i) + "," + std::to_string(j) + ")";
            for (size_t p = 0; p < perms.size(); ++p)
                if (perms[p][i] == j) eq.unknowns.push_back(static_cast<int>(p));
            sys.equations.push_back(std::move(eq));
        }
    return sys;
}

enum class SemiclassicalStrategy { LpSynthesis, Numeric, ExactPruning };

struct ScFeasibleX { SemiclassicalCertificate<GRational> cert; };
struct ScFeasibleF { SemiclassicalCertificate<CDouble> cert; };
struct ScInfeasible { ExactlyInfeasible why; };
struct ScUndecided { double residual = 0; };
using SemiclassicalResult = std::variant<ScFeasibleX, ScFeasibleF, ScInfeasible, ScUndecided>;

/// Semiclassicality via the published scaling certificate: applicable when
/// (N-1) times the truncation still lies in (B_N)_max, i.e. the square is a
/// mixture as in the convex-combination corollary. Inconclusive otherwise.
inline SemiclassicalResult semiclassical_lp_synthesis(const MagicX& m) {
    Polytope b = models::birkhoff_body(m.n);
    TupleX x = truncate_shift(m);
    TupleX scaled_up = scaled(x, Rational(m.n - 1));
    if (!pmax_check(b, scaled_up).member) return ScUndecided{};
    auto cert = certificate_from_scaling(models::birkhoff_T(m.n), b, scaled_up);
    SemiclassicalCertificate<GRational> sc;
    sc.n = m.n;
    sc.q = cert.povm.elements;
    if (!verify_semiclassical(m, sc))
        throw std::logic_error("lp-synthesis certificate failed re-verification");
    return ScFeasibleX{std::move(sc)};
}

inline SemiclassicalResult semiclassical_exact_pruning(const MagicX& m) {
    if (m.n > 4)
        throw std::invalid_argument("exact-pruning semiclassical check limited to N <= 4");
    PruneResult r = range_pruned_feasibility(semiclassical_system(m));
    if (auto* inf = std::get_if<ExactlyInfeasible>(&r)) return ScInfeasible{*inf};
    if (auto* red = std::get_if<ReducedFeasible>(&r)) {
        SemiclassicalCertificate<GRational> sc;
        sc.n = m.n;
        sc.q = red->assignment;
        if (!verify_semiclassical(m, sc))
            throw std::logic_error("pruning assignment failed re-verification");
        return ScFeasibleX{std::move(sc)};
    }
    return ScUndecided{};
}

inline SemiclassicalResult semiclassical_numeric(const MagicX& m, int max_iters = 5000,
                                                 double tol = 1e-7) {
    Polytope b = models::birkhoff_body(m.n);
    TupleF x = to_float(truncate_shift(m));
    ApResult r = pmin_search_ap(b, x, max_iters, tol);
    if (auto* f = std::get_if<ApFeasible>(&r)) {
        SemiclassicalCertificate<CDouble> sc;
        sc.n = m.n;
        sc.q = f->certificate.povm.elements;
        return ScFeasibleF{std::move(sc)};
    }
    return ScUndecided{std::get<ApUndecided>(r).residual};
}

inline SemiclassicalResult semiclassical_check(const MagicX& m, SemiclassicalStrategy strategy,
                                               int max_iters = 5000, double tol = 1e-7) {
    switch (strategy) {
        case SemiclassicalStrategy::LpSynthesis: return semiclassical_lp_synthesis(m);
        case SemiclassicalStrategy::ExactPruning: return semiclassical_exact_pruning(m);
        case SemiclassicalStrategy::Numeric: return semiclassical_numeric(m, max_iters, tol);
    }
    throw std::invalid_argument("unknown strategy");
}

/// The always-semiclassical mixture B = A/(N-1) + (N-2)/(N-1) J/N, with its
/// verifying certificate attached. For N = 2 the square is returned as is.
inline std::pair<MagicX, SemiclassicalCertificate<GRational>> semiclassical_mix(const MagicX& m) {
    const int n = m.n;
    const int d = m.dim();
    MagicX mixed;
    mixed.n = n;
    HermMatrix<GRational> noise = HermX::identity(d);
    noise.scale(Rational(n - 2) / (Rational(n - 1) * n));
    for (const auto& b : m.blocks) {
        HermX x = b;
        x.scale(Rational(1, n - 1));
        mixed.blocks.push_back(x + noise);
    }
    auto r = semiclassical_lp_synthesis(mixed);
    auto* ok = std::get_if<ScFeasibleX>(&r);
    if (!ok) throw std::logic_error("semiclassical_mix: synthesis must succeed on the mixture");
    return {std::move(mixed), std::move(ok->cert)};
}

/// Diagonal-sum sufficient condition: if sum_k M_{k, pi(k)} >= (N-2)/(N-1) I
/// for all pi, then C_pi = (sum_k M_{k, pi(k)} - (N-2)/(N-1) I) / ((N-2)! N)
/// is a verifying POVM. Returns nothing when the condition fails.
inline std::optional<SemiclassicalCertificate<GRational>> trace_condition_check(const MagicX& m) {
    const int n = m.n;
    const int d = m.dim();
    const auto perms = models::permutations(n);
    std::vector<HermX> deficits;
    HermX bar = HermX::identity(d);
    bar.scale(Rational(n - 2, n - 1));
    for (const auto& pi : perms) {
        HermX s = HermX::zero(d);
        for (int k = 0; k < n; ++k) s += m.at(k, pi[k]);
        s -= bar;
        if (!psd_check(s)) return std::nullopt;
        deficits.push_back(std::move(s));
    }
    SemiclassicalCertificate<GRational> cert;
    cert.n = n;
    Rational w = Rational(1) / (Rational(models::factorial(n - 2)) * n);
    for (auto& s : deficits) {
        s.scale(w);
        cert.q.push_back(std::move(s));
    }
    if (!verify_semiclassical(m, cert))
        throw std::logic_error("trace-condition certificate failed re-verification");
    return cert;
}

} // namespace polycompat
