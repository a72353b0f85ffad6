#pragma once

#include "polycompat/eig.hpp"
#include "polycompat/hermitian.hpp"
#include "polycompat/inclusion.hpp"
#include "polycompat/polytope.hpp"

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace polycompat {

template <typename S>
typename scalar_traits<S>::real_type backend_real(const Rational& q);
template <>
inline Rational backend_real<GRational>(const Rational& q) { return q; }
template <>
inline double backend_real<CDouble>(const Rational& q) { return to_double(q); }

enum class PovmMode { Povm, SubPovm };

/// k-tuple of PSD matrices summing to the identity (Povm mode) or to at most
/// the identity (SubPovm mode). Validated at construction: exactly in the
/// exact backend, within tol in float.
template <typename S>
struct Povm {
    std::vector<HermMatrix<S>> elements;
    PovmMode mode = PovmMode::Povm;

    int size() const { return static_cast<int>(elements.size()); }
    int dim() const { return elements.empty() ? 0 : elements.front().dim(); }
    const HermMatrix<S>& operator[](int i) const { return elements[i]; }

    HermMatrix<S> sum() const {
        HermMatrix<S> s = HermMatrix<S>::zero(dim());
        for (const auto& e : elements) s += e;
        return s;
    }
};

using PovmX = Povm<GRational>;
using PovmF = Povm<CDouble>;

template <typename S>
Povm<S> make_povm(std::vector<HermMatrix<S>> elements, PovmMode mode = PovmMode::Povm,
                  double tol = kPsdTol) {
    if (elements.empty()) throw std::invalid_argument("povm: no elements");
    const int d = elements.front().dim();
    for (const auto& e : elements) {
        if (e.dim() != d) throw std::invalid_argument("povm: mixed dimensions");
        if constexpr (scalar_traits<S>::exact) {
            if (!psd_check(e)) throw std::invalid_argument("povm: element not PSD");
        } else {
            if (!psd_check(e, tol)) throw std::invalid_argument("povm: element not PSD");
        }
    }
    HermMatrix<S> total = HermMatrix<S>::zero(d);
    for (const auto& e : elements) total += e;
    HermMatrix<S> gap = HermMatrix<S>::identity(d) - total;
    if constexpr (scalar_traits<S>::exact) {
        if (mode == PovmMode::Povm ? !gap.is_zero() : !psd_check(gap))
            throw std::invalid_argument("povm: normalization violated");
    } else {
        if (mode == PovmMode::Povm ? max_abs_diff(total, HermMatrix<S>::identity(d)) > tol
                                   : !psd_check(gap, tol))
            throw std::invalid_argument("povm: normalization violated");
    }
    Povm<S> p;
    p.elements = std::move(elements);
    p.mode = mode;
    return p;
}

inline PovmF to_float(const PovmX& p) {
    PovmF f;
    f.mode = p.mode;
    for (const auto& e : p.elements) f.elements.push_back(to_float(e));
    return f;
}

/// Compatibility certificate: a POVM indexed by the vertex order of the
/// polytope it is bound to (by content hash).
template <typename S>
struct CompatCertificate {
    uint64_t polytope_hash = 0;
    Povm<S> povm;
};

using CertificateX = CompatCertificate<GRational>;
using CertificateF = CompatCertificate<CDouble>;

struct PmaxResult {
    bool member = false;
    std::vector<double> margins;  // smallest eigenvalue of I - sum_x h_j(x) A_x per facet
    explicit operator bool() const { return member; }
};

/// Facet block of hhat Ahat: I - sum_x h_j(x) A_x.
template <typename S>
HermMatrix<S> facet_block(const Polytope& p, const HermTuple<S>& a, int j) {
    HermMatrix<S> b = HermMatrix<S>::identity(a.dim());
    const RVector& h = p.facet(j);
    for (int x = 0; x < p.g(); ++x) {
        if (h[x] == 0) continue;
        HermMatrix<S> m = a[x];
        m.scale(backend_real<S>(-h[x]));
        b += m;
    }
    return b;
}

/// Membership in P_max: every block of hhat Ahat is PSD. Exact backend
/// decides exactly (d <= 8); float uses the eigenvalue tolerance. Margins
/// are always reported as floats.
template <typename S>
PmaxResult pmax_check(const Polytope& p, const HermTuple<S>& a, double tol = kPsdTol) {
    if (a.g() != p.g()) throw std::invalid_argument("pmax_check: tuple/polytope dimension mismatch");
    PmaxResult r;
    r.member = true;
    for (int j = 0; j < p.num_facets(); ++j) {
        HermMatrix<S> b = facet_block(p, a, j);
        bool ok;
        double margin;
        if constexpr (scalar_traits<S>::exact) {
            ok = psd_check(b);
            margin = herm_eig_min(to_float(b));
        } else {
            margin = herm_eig_min(b);
            ok = margin >= -tol;
        }
        r.margins.push_back(margin);
        r.member = r.member && ok;
    }
    return r;
}

/// Checks A_x = sum_i v_i(x) C_i for all x and sum_i C_i = I; exact equality
/// in the exact backend, entrywise within tol in float.
template <typename S>
bool verify_certificate(const Polytope& p, const HermTuple<S>& a, const Povm<S>& c,
                        double tol = kPsdTol) {
    if (c.size() != p.num_vertices())
        throw std::invalid_argument("verify_certificate: certificate index mismatch");
    if (a.g() != p.g()) throw std::invalid_argument("verify_certificate: dimension mismatch");
    const int d = a.dim();
    auto close = [&](const HermMatrix<S>& x, const HermMatrix<S>& y) {
        if constexpr (scalar_traits<S>::exact)
            return x == y;
        else
            return max_abs_diff(x, y) <= tol;
    };
    for (int x = 0; x < p.g(); ++x) {
        HermMatrix<S> s = HermMatrix<S>::zero(d);
        for (int i = 0; i < c.size(); ++i) {
            const Rational& w = p.vertex(i)[x];
            if (w == 0) continue;
            HermMatrix<S> m = c[i];
            m.scale(backend_real<S>(w));
            s += m;
        }
        if (!close(s, a[x])) return false;
    }
    return close(c.sum(), HermMatrix<S>::identity(d));
}

template <typename S>
bool verify_certificate(const Polytope& p, const HermTuple<S>& a,
                        const CompatCertificate<S>& cert, double tol = kPsdTol) {
    if (cert.polytope_hash != p.content_hash())
        throw std::invalid_argument("verify_certificate: certificate bound to another polytope");
    return verify_certificate(p, a, cert.povm, tol);
}

/// Applies a dimension-free scaling certificate (s, T) to a P_max member:
/// C := T hhat Ahat is a POVM certifying s . A in P_min. Exact in the exact
/// backend for every dimension d.
template <typename S>
CompatCertificate<S> certificate_from_scaling(const ScalingCertificate& sc, const Polytope& p,
                                              const HermTuple<S>& a, double tol = kPsdTol) {
    if (sc.polytope_hash() != p.content_hash())
        throw std::invalid_argument("certificate_from_scaling: certificate/polytope mismatch");
    if (!pmax_check(p, a, tol).member)
        throw std::invalid_argument("certificate_from_scaling: tuple is not in P_max");
    const int d = a.dim();
    const int k = p.num_vertices();
    const int r = p.num_facets();
    std::vector<HermMatrix<S>> blocks;
    blocks.reserve(r);
    for (int j = 0; j < r; ++j) blocks.push_back(facet_block(p, a, j));
    std::vector<HermMatrix<S>> c;
    c.reserve(k);
    for (int i = 0; i < k; ++i) {
        HermMatrix<S> ci = HermMatrix<S>::zero(d);
        for (int j = 0; j < r; ++j) {
            const Rational& w = sc.t().at(i, j);
            if (w == 0) continue;
            HermMatrix<S> m = blocks[j];
            m.scale(backend_real<S>(w));
            ci += m;
        }
        c.push_back(std::move(ci));
    }
    CompatCertificate<S> cert;
    cert.polytope_hash = p.content_hash();
    cert.povm = make_povm(std::move(c), PovmMode::Povm, tol);
    return cert;
}

/// P_min = P_max for simplices: the unique candidate POVM is vhat^{-1} Ahat.
template <typename S>
CompatCertificate<S> simplex_certificate(const Polytope& p, const HermTuple<S>& a,
                                         double tol = kPsdTol) {
    if (p.num_vertices() != p.g() + 1)
        throw std::invalid_argument("simplex_certificate: polytope is not a simplex");
    auto w = inverse(p.vhat());
    if (!w) throw std::invalid_argument("simplex_certificate: degenerate vertex matrix");
    if (!pmax_check(p, a, tol).member)
        throw std::invalid_argument("simplex_certificate: tuple is not in P_max");
    const int d = a.dim();
    std::vector<HermMatrix<S>> c;
    for (int i = 0; i <= p.g(); ++i) {
        HermMatrix<S> ci = HermMatrix<S>::identity(d);
        ci.scale(backend_real<S>(w->at(i, p.g())));
        for (int x = 0; x < p.g(); ++x) {
            const Rational& q = w->at(i, x);
            if (q == 0) continue;
            HermMatrix<S> m = a[x];
            m.scale(backend_real<S>(q));
            ci += m;
        }
        c.push_back(std::move(ci));
    }
    CompatCertificate<S> cert;
    cert.polytope_hash = p.content_hash();
    cert.povm = make_povm(std::move(c), PovmMode::Povm, tol);
    return cert;
}

/// Probability vector pi with sum_i pi_i v_i = 0; exists for every
/// 0-interior polytope.
inline RVector resolution_of_zero(const Polytope& p) {
    const int g = p.g();
    const int k = p.num_vertices();
    RMatrix a(g + 1, k);
    RVector b(g + 1);
    for (int i = 0; i < k; ++i) {
        for (int x = 0; x < g; ++x) a.at(x, i) = p.vertex(i)[x];
        a.at(g, i) = 1;
    }
    b[g] = 1;
    LpResult r = lp_feasible(a, b);
    if (r.status != LpStatus::Optimal)
        throw std::logic_error("resolution_of_zero: infeasible; polytope is corrupted");
    return r.point;
}

/// Completes a sub-POVM to a POVM representing the same tuple by spreading
/// the deficit C_0 = I - sum C_i along a barycentric resolution of 0.
template <typename S>
Povm<S> complete_subpovm(const Polytope& p, const Povm<S>& c, double tol = kPsdTol) {
    if (c.size() != p.num_vertices())
        throw std::invalid_argument("complete_subpovm: index mismatch");
    RVector pi = resolution_of_zero(p);
    HermMatrix<S> c0 = HermMatrix<S>::identity(c.dim()) - c.sum();
    std::vector<HermMatrix<S>> out;
    out.reserve(c.size());
    for (int i = 0; i < c.size(); ++i) {
        HermMatrix<S> m = c0;
        m.scale(backend_real<S>(pi[i]));
        out.push_back(c[i] + m);
    }
    return make_povm(std::move(out), PovmMode::Povm, tol);
}

/// Effects <-> tuple correspondence for the hypercube: A_i = 2 E_i - I.
template <typename S>
HermTuple<S> effects_to_tuple(const std::vector<HermMatrix<S>>& effects) {
    if (effects.empty()) throw std::invalid_argument("effects_to_tuple: empty input");
    std::vector<HermMatrix<S>> out;
    for (const auto& e : effects) {
        HermMatrix<S> m = e;
        m.scale(backend_real<S>(Rational(2)));
        out.push_back(m - HermMatrix<S>::identity(e.dim()));
    }
    return HermTuple<S>(std::move(out));
}

template <typename S>
std::vector<HermMatrix<S>> tuple_to_effects(const HermTuple<S>& a) {
    std::vector<HermMatrix<S>> out;
    for (const auto& m : a.entries) {
        HermMatrix<S> e = m + HermMatrix<S>::identity(a.dim());
        e.scale(backend_real<S>(Rational(1, 2)));
        out.push_back(std::move(e));
    }
    return out;
}

/// Multi-outcome correspondence aligned to the polysimplex P_k1 x ... x P_kg:
/// A_{offset + i} = E^{(j)}_i - (1/k_j) I for i < k_j - 1.
template <typename S>
HermTuple<S> multioutcome_to_tuple(const std::vector<Povm<S>>& povms) {
    if (povms.empty()) throw std::invalid_argument("multioutcome_to_tuple: empty input");
    std::vector<HermMatrix<S>> out;
    for (const auto& e : povms) {
        if (e.mode != PovmMode::Povm)
            throw std::invalid_argument("multioutcome_to_tuple: inputs must be POVMs");
        const int kj = e.size();
        for (int i = 0; i + 1 < kj; ++i) {
            HermMatrix<S> m = HermMatrix<S>::identity(e.dim());
            m.scale(backend_real<S>(Rational(-1, kj)));
            out.push_back(e[i] + m);
        }
    }
    return HermTuple<S>(std::move(out));
}

template <typename S>
std::vector<Povm<S>> tuple_to_multioutcome(const HermTuple<S>& a, const std::vector<int>& ks,
                                           double tol = kPsdTol) {
    int expected = 0;
    for (int k : ks) expected += k - 1;
    if (expected != a.g())
        throw std::invalid_argument("tuple_to_multioutcome: outcome counts do not match tuple");
    std::vector<Povm<S>> out;
    int off = 0;
    for (int kj : ks) {
        std::vector<HermMatrix<S>> e;
        HermMatrix<S> rest = HermMatrix<S>::identity(a.dim());
        for (int i = 0; i + 1 < kj; ++i) {
            HermMatrix<S> m = HermMatrix<S>::identity(a.dim());
            m.scale(backend_real<S>(Rational(1, kj)));
            m += a[off + i];
            rest -= m;
            e.push_back(std::move(m));
        }
        e.push_back(std::move(rest));
        out.push_back(make_povm(std::move(e), PovmMode::Povm, tol));
        off += kj - 1;
    }
    return out;
}

/// Exact classical post-processing p(v | lambda) with
/// target_v = sum_lambda p(v|lambda) joint_lambda, found by LP. Returns the
/// stochastic matrix (rows: target outcomes, columns: joint outcomes) or
/// nothing when the target is not a post-processing of the joint POVM.
inline std::optional<RMatrix> post_processing_from(const PovmX& joint, const PovmX& target) {
    const int d = joint.dim();
    if (target.dim() != d)
        throw std::invalid_argument("post_processing_from: dimension mismatch");
    const int nl = joint.size();
    const int nv = target.size();
    // Variables p(v, lambda) >= 0, row-major over (v, lambda).
    std::vector<RVector> rows;
    RVector rhs;
    for (int v = 0; v < nv; ++v)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j <= i; ++j)
                for (int part = 0; part < (i == j ? 1 : 2); ++part) {
                    RVector row(nv * nl, Rational(0));
                    for (int l = 0; l < nl; ++l) {
                        GRational e = joint[l](i, j);
                        row[v * nl + l] = part == 0 ? e.re : e.im;
                    }
                    GRational t = target[v](i, j);
                    rows.push_back(std::move(row));
                    rhs.push_back(part == 0 ? t.re : t.im);
                }
    for (int l = 0; l < nl; ++l) {
        RVector row(nv * nl, Rational(0));
        for (int v = 0; v < nv; ++v) row[v * nl + l] = 1;
        rows.push_back(std::move(row));
        rhs.push_back(1);
    }
    RMatrix lhs(static_cast<int>(rows.size()), nv * nl);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < nv * nl; ++j) lhs.at(static_cast<int>(i), j) = rows[i][j];
    LpResult r = lp_feasible(lhs, rhs);
    if (r.status != LpStatus::Optimal) return std::nullopt;
    RMatrix p(nv, nl);
    for (int v = 0; v < nv; ++v)
        for (int l = 0; l < nl; ++l) p.at(v, l) = r.point[v * nl + l];
    return p;
}

// ---------------------------------------------------------------------------
// Numerical feasibility search: alternating projections between the affine
// set {C : vhat C = Ahat} and the product of PSD cones.

struct ApFeasible {
    CertificateF certificate;
    int iterations = 0;
};
struct ApUndecided {
    double residual = 0;
    int iterations = 0;
};
using ApResult = std::variant<ApFeasible, ApUndecided>;

inline bool ap_feasible(const ApResult& r) { return std::holds_alternative<ApFeasible>(r); }

/// Searches for a P_min certificate of A numerically. The affine projection
/// uses an exact rational least-norm pseudo-solve of vhat computed once;
/// Feasible is returned only when the final family re-verifies within tol
/// after repairing eigenvalues in (-1e-9, 0). Undecided is not an error:
/// alternating projections cannot certify infeasibility.
inline ApResult pmin_search_ap(const Polytope& p, const TupleF& a, int max_iters = 5000,
                               double tol = 1e-7) {
    if (a.g() != p.g()) throw std::invalid_argument("pmin_search_ap: dimension mismatch");
    const int k = p.num_vertices();
    const int g = p.g();
    const int d = a.dim();

    // Exact pseudo-solve M = vhat^T (vhat vhat^T)^{-1}, applied numerically.
    RMatrix vv = p.vhat() * p.vhat().transposed();
    auto vv_inv = inverse(vv);
    if (!vv_inv) throw std::logic_error("pmin_search_ap: vhat is rank-deficient");
    RMatrix m_exact = p.vhat().transposed() * *vv_inv;
    Mat<double> m(k, g + 1);
    for (int i = 0; i < k; ++i)
        for (int x = 0; x <= g; ++x) m.at(i, x) = to_double(m_exact.at(i, x));
    Mat<double> vh(g + 1, k);
    for (int x = 0; x <= g; ++x)
        for (int i = 0; i < k; ++i) vh.at(x, i) = to_double(p.vhat().at(x, i));

    std::vector<HermF> ahat;
    for (int x = 0; x < g; ++x) ahat.push_back(a[x]);
    ahat.push_back(HermF::identity(d));

    auto project_affine = [&](std::vector<HermF>& c) {
        std::vector<HermF> resid;
        resid.reserve(g + 1);
        for (int x = 0; x <= g; ++x) {
            HermF r = HermF::zero(d);
            for (int i = 0; i < k; ++i) {
                HermF t = c[i];
                t.scale(vh.at(x, i));
                r += t;
            }
            r -= ahat[x];
            resid.push_back(std::move(r));
        }
        for (int i = 0; i < k; ++i)
            for (int x = 0; x <= g; ++x) {
                HermF t = resid[x];
                t.scale(m.at(i, x));
                c[i] -= t;
            }
    };

    std::vector<HermF> c(k, HermF::identity(d));
    for (auto& b : c) b.scale(1.0 / k);
    project_affine(c);

    double residual = 0;
    int it = 0;
    for (; it < max_iters; ++it) {
        std::vector<HermF> onto_cone;
        onto_cone.reserve(k);
        residual = 0;
        for (int i = 0; i < k; ++i) {
            HermF proj = psd_project(c[i]);
            double dmat = frobenius_dist(proj, c[i]);
            residual += dmat * dmat;
            onto_cone.push_back(std::move(proj));
        }
        residual = std::sqrt(residual);
        if (residual < tol * 1e-2) { c = std::move(onto_cone); project_affine(c); break; }
        c = std::move(onto_cone);
        project_affine(c);
    }

    // Candidate check: repair boundary-grazing blocks, renormalize, verify.
    std::vector<HermF> cand = c;
    double lift = 0;
    for (auto& b : cand) {
        double lo = herm_eig_min(b);
        if (lo < -kPsdTol) { lift = -1; break; }
        if (lo < 0) {
            HermF add = HermF::identity(d);
            add.scale(-lo);
            b += add;
            lift += -lo;
        }
    }
    if (lift >= 0) {
        if (lift > 0)
            for (auto& b : cand) b.scale(1.0 / (1.0 + lift));
        try {
            PovmF povm = make_povm(cand, PovmMode::Povm, tol);
            if (verify_certificate(p, a, povm, tol))
                return ApFeasible{CertificateF{p.content_hash(), std::move(povm)}, it};
        } catch (const std::invalid_argument&) {
            // fall through to Undecided
        }
    }
    return ApUndecided{residual, it};
}

// ---------------------------------------------------------------------------
// Constructive closure helpers for products (marginals, embeddings, mixes).

/// Marginal POVMs of a product certificate; vertex order of the product is
/// first factor slowest.
template <typename S>
std::pair<Povm<S>, Povm<S>> marginal_certificates(const Povm<S>& joint, int k1, int k2,
                                                  double tol = kPsdTol) {
    if (joint.size() != k1 * k2)
        throw std::invalid_argument("marginal_certificates: size mismatch");
    const int d = joint.dim();
    std::vector<HermMatrix<S>> c1(k1, HermMatrix<S>::zero(d));
    std::vector<HermMatrix<S>> c2(k2, HermMatrix<S>::zero(d));
    for (int i = 0; i < k1; ++i)
        for (int j = 0; j < k2; ++j) {
            c1[i] += joint[i * k2 + j];
            c2[j] += joint[i * k2 + j];
        }
    return {make_povm(std::move(c1), PovmMode::Povm, tol),
            make_povm(std::move(c2), PovmMode::Povm, tol)};
}

template <typename S>
HermMatrix<S> herm_direct_sum(const HermMatrix<S>& a, const HermMatrix<S>& b) {
    HermMatrix<S> m(a.dim() + b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j <= i; ++j) m.set(i, j, a(i, j));
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j <= i; ++j) m.set(a.dim() + i, a.dim() + j, b(i, j));
    return m;
}

/// Embedding certificate for (A1 (+) 0, 0 (+) A2) on P1 x P2 from separate
/// certificates: C'_{(i,j)} = lambda_j (C_i (+) 0) + mu_i (0 (+) D_j), with
/// mu, lambda barycentric resolutions of 0.
template <typename S>
Povm<S> direct_sum_embedding_certificate(const Polytope& p1, const Povm<S>& c1,
                                         const Polytope& p2, const Povm<S>& c2,
                                         double tol = kPsdTol) {
    RVector mu = resolution_of_zero(p1);
    RVector lambda = resolution_of_zero(p2);
    const int d1 = c1.dim(), d2 = c2.dim();
    std::vector<HermMatrix<S>> out;
    for (int i = 0; i < c1.size(); ++i)
        for (int j = 0; j < c2.size(); ++j) {
            HermMatrix<S> left = herm_direct_sum(c1[i], HermMatrix<S>::zero(d2));
            left.scale(backend_real<S>(lambda[j]));
            HermMatrix<S> right = herm_direct_sum(HermMatrix<S>::zero(d1), c2[j]);
            right.scale(backend_real<S>(mu[i]));
            out.push_back(left + right);
        }
    return make_povm(std::move(out), PovmMode::Povm, tol);
}

/// Noise-mixing certificate for (q1 A1, q2 A2) on P1 x P2, q1 + q2 <= 1,
/// via the sub-POVM q1-q2 mixture completed through a resolution of 0.
template <typename S>
Povm<S> mixed_pair_certificate(const Polytope& p1, const Povm<S>& c1, const Polytope& p2,
                               const Povm<S>& c2, const Rational& q1, const Rational& q2,
                               const Polytope& product, double tol = kPsdTol) {
    if (q1 < 0 || q2 < 0 || q1 + q2 > 1)
        throw std::invalid_argument("mixed_pair_certificate: need q1, q2 >= 0, q1 + q2 <= 1");
    RVector mu = resolution_of_zero(p1);
    RVector lambda = resolution_of_zero(p2);
    std::vector<HermMatrix<S>> sub;
    for (int i = 0; i < c1.size(); ++i)
        for (int j = 0; j < c2.size(); ++j) {
            HermMatrix<S> left = c1[i];
            left.scale(backend_real<S>(q1 * lambda[j]));
            HermMatrix<S> right = c2[j];
            right.scale(backend_real<S>(q2 * mu[i]));
            sub.push_back(left + right);
        }
    Povm<S> s = make_povm(std::move(sub), PovmMode::SubPovm, tol);
    return complete_subpovm(product, s, tol);
}

} // namespace polycompat
