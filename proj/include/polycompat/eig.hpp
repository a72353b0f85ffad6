#pragma once

#include "polycompat/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace polycompat {

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    Mat<CDouble> vectors;        // columns, unitary
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix, d <= 16.
/// Off-diagonal mass is annihilated plane by plane with phased rotations;
/// converges quadratically once sweeps get going.
inline EigenDecomposition jacobi_eigen(const HermF& h) {
    const int d = h.dim();
    Mat<CDouble> a = h.to_full();
    Mat<CDouble> v = Mat<CDouble>::identity(d);

    double norm = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) norm += std::norm(a.at(i, j));
    norm = std::sqrt(norm);
    const double eps = 1e-15 * std::max(1.0, norm);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) off += std::norm(a.at(p, q));
        if (std::sqrt(off) <= eps) break;

        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) {
                CDouble beta = a.at(p, q);
                double ab = std::abs(beta);
                if (ab <= eps * 1e-2) continue;
                CDouble phase = beta / ab;  // e^{i phi}
                double alpha = a.at(p, p).real();
                double gamma = a.at(q, q).real();
                double tau = (gamma - alpha) / (2 * ab);
                double t = tau >= 0 ? 1.0 / (tau + std::sqrt(1 + tau * tau))
                                    : -1.0 / (-tau + std::sqrt(1 + tau * tau));
                double c = 1.0 / std::sqrt(1 + t * t);
                double s = t * c;
                CDouble sp = s * phase;              // s e^{i phi}
                CDouble spc = s * std::conj(phase);  // s e^{-i phi}

                for (int k = 0; k < d; ++k) {
                    CDouble akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = akp * c - akq * spc;
                    a.at(k, q) = akp * sp + akq * c;
                }
                for (int k = 0; k < d; ++k) {
                    CDouble apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = apk * c - aqk * std::conj(spc);
                    a.at(q, k) = apk * std::conj(sp) + aqk * c;
                }
                a.at(p, q) = 0;
                a.at(q, p) = 0;
                for (int k = 0; k < d; ++k) {
                    CDouble vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = vkp * c - vkq * spc;
                    v.at(k, q) = vkp * sp + vkq * c;
                }
            }
    }

    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a.at(x, x).real() < a.at(y, y).real(); });

    EigenDecomposition e;
    e.values.resize(d);
    e.vectors = Mat<CDouble>(d, d);
    for (int j = 0; j < d; ++j) {
        e.values[j] = a.at(order[j], order[j]).real();
        for (int i = 0; i < d; ++i) e.vectors.at(i, j) = v.at(i, order[j]);
    }
    return e;
}

inline double herm_eig_min(const HermF& h) {
    if (h.dim() == 0) return 0;
    return jacobi_eigen(h).values.front();
}
inline double herm_eig_min(const HermX& h) { return herm_eig_min(to_float(h)); }

inline double herm_eig_max(const HermF& h) {
    if (h.dim() == 0) return 0;
    return jacobi_eigen(h).values.back();
}

constexpr double kPsdTol = 1e-9;

inline bool psd_check(const HermF& h, double tol = kPsdTol) {
    return herm_eig_min(h) >= -tol;
}

/// Exact PSD decision via nonnegativity of all principal minors.
/// Refused above d = 8: the subset count grows too fast to be worth it.
inline bool psd_check(const HermX& h) {
    const int d = h.dim();
    if (d > 8) throw std::invalid_argument("exact psd_check limited to d <= 8");
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        int n = static_cast<int>(idx.size());
        Mat<GRational> sub(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sub.at(i, j) = h(idx[i], idx[j]);
        GRational det = determinant(sub);
        if (det.im != 0)
            throw std::logic_error("principal minor of a Hermitian matrix must be real");
        if (det.re < 0) return false;
    }
    return true;
}

/// Nearest PSD matrix in Frobenius norm: clamp negative eigenvalues to zero
/// in an eigenbasis.
inline HermF psd_project(const HermF& h) {
    const int d = h.dim();
    EigenDecomposition e = jacobi_eigen(h);
    HermF r(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j) {
            CDouble s = 0;
            for (int k = 0; k < d; ++k) {
                if (e.values[k] <= 0) continue;
                s += e.values[k] * e.vectors.at(i, k) * std::conj(e.vectors.at(j, k));
            }
            r.set(i, j, s);
        }
    return r;
}

inline double frobenius_norm(const HermF& h) {
    double s = 0;
    for (int i = 0; i < h.dim(); ++i)
        for (int j = 0; j < h.dim(); ++j) s += std::norm(h(i, j));
    return std::sqrt(s);
}

inline double frobenius_dist(const HermF& a, const HermF& b) {
    return frobenius_norm(a - b);
}

} // namespace polycompat
