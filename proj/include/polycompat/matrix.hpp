#pragma once

#include "polycompat/rational.hpp"

#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

namespace polycompat {

/// Dense matrix over an exact field (Rational or GRational), row-major.
template <typename F>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        assert(rows >= 0 && cols >= 0);
    }
    Mat(int rows, int cols, std::vector<F> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        assert(a_.size() == static_cast<size_t>(rows) * cols);
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    F& at(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }
    const F& at(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    const std::vector<F>& data() const { return a_; }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        assert(x.cols_ == y.rows_);
        Mat z(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const F& xik = x.at(i, k);
                if (field_is_zero(xik)) continue;
                for (int j = 0; j < y.cols_; ++j) z.at(i, j) += xik * y.at(k, j);
            }
        return z;
    }
    friend Mat operator+(const Mat& x, const Mat& y) {
        assert(x.rows_ == y.rows_ && x.cols_ == y.cols_);
        Mat z = x;
        for (size_t i = 0; i < z.a_.size(); ++i) z.a_[i] += y.a_[i];
        return z;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        assert(x.rows_ == y.rows_ && x.cols_ == y.cols_);
        Mat z = x;
        for (size_t i = 0; i < z.a_.size(); ++i) z.a_[i] -= y.a_[i];
        return z;
    }
    friend Mat operator*(const F& s, const Mat& x) {
        Mat z = x;
        for (auto& e : z.a_) e = s * e;
        return z;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    int rows_, cols_;
    std::vector<F> a_;
};

using RMatrix = Mat<Rational>;
using RVector = std::vector<Rational>;

template <typename F>
std::vector<F> mat_vec(const Mat<F>& m, const std::vector<F>& v) {
    assert(static_cast<int>(v.size()) == m.cols());
    std::vector<F> r(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

template <typename F>
F dot(const std::vector<F>& x, const std::vector<F>& y) {
    assert(x.size() == y.size());
    F s{};
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

/// In-place reduced row echelon form with unit pivots.
/// Returns the rank; pivot column indices appended to `pivots` when non-null.
template <typename F>
int rref(Mat<F>& m, std::vector<int>* pivots = nullptr) {
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int piv = -1;
        for (int i = rank; i < m.rows(); ++i)
            if (!field_is_zero(m.at(i, col))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(rank, j));
        F inv = F(1) / m.at(rank, col);
        for (int j = col; j < m.cols(); ++j) m.at(rank, j) = inv * m.at(rank, j);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == rank || field_is_zero(m.at(i, col))) continue;
            F f = m.at(i, col);
            for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

template <typename F>
int rank_of(Mat<F> m) {
    return rref(m);
}

/// Basis of the right null space, returned as columns. Empty matrix (n x 0)
/// when the null space is trivial. Basis is canonical: one vector per free
/// column of the RREF, with a unit entry in that free coordinate.
template <typename F>
Mat<F> nullspace(const Mat<F>& a) {
    Mat<F> m = a;
    std::vector<int> pivots;
    int rank = rref(m, &pivots);
    int n = a.cols();
    std::vector<int> free_cols;
    {
        std::vector<bool> is_pivot(n, false);
        for (int c : pivots) is_pivot[c] = true;
        for (int c = 0; c < n; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
    }
    Mat<F> basis(n, static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis.at(fc, static_cast<int>(k)) = F(1);
        for (int r = 0; r < rank; ++r) basis.at(pivots[r], static_cast<int>(k)) = -m.at(r, fc);
    }
    return basis;
}

enum class SolveStatus { Unique, Underdetermined, Inconsistent };

template <typename F>
struct SolveResult {
    SolveStatus status = SolveStatus::Inconsistent;
    std::vector<F> particular;  // valid unless Inconsistent
    Mat<F> null_basis;          // columns; empty when Unique
    bool ok() const { return status != SolveStatus::Inconsistent; }
};

/// Exact solve of A x = b. Flags inconsistency exactly; an underdetermined
/// system is reported with one particular solution plus a null-space basis.
template <typename F>
SolveResult<F> solve(const Mat<F>& a, const std::vector<F>& b) {
    assert(static_cast<int>(b.size()) == a.rows());
    Mat<F> aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    std::vector<int> pivots;
    int rank = rref(aug, &pivots);
    SolveResult<F> r;
    if (!pivots.empty() && pivots.back() == a.cols()) return r;  // 0 = 1 row
    r.particular.assign(a.cols(), F{});
    for (int i = 0; i < rank; ++i) r.particular[pivots[i]] = aug.at(i, a.cols());
    r.null_basis = nullspace(a);
    r.status = r.null_basis.cols() == 0 ? SolveStatus::Unique : SolveStatus::Underdetermined;
    return r;
}

template <typename F>
std::optional<Mat<F>> inverse(const Mat<F>& a) {
    assert(a.rows() == a.cols());
    int n = a.rows();
    Mat<F> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = F(1);
    }
    std::vector<int> pivots;
    rref(aug, &pivots);
    // invertible iff all pivots land in the left block
    for (int p : pivots)
        if (p >= n) return std::nullopt;
    if (static_cast<int>(pivots.size()) < n) return std::nullopt;
    Mat<F> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

/// Determinant by fraction-free-ish Gaussian elimination (exact field ops).
template <typename F>
F determinant(Mat<F> m) {
    assert(m.rows() == m.cols());
    int n = m.rows();
    F det = F(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!field_is_zero(m.at(i, col))) { piv = i; break; }
        if (piv < 0) return F{};
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            det = -det;
        }
        det *= m.at(col, col);
        F inv = F(1) / m.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (field_is_zero(m.at(i, col))) continue;
            F f = inv * m.at(i, col);
            for (int j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return det;
}

/// Exact column-space basis (as columns), canonicalized by RREF of the
/// transpose so equal subspaces produce identical bases.
template <typename F>
Mat<F> column_space(const Mat<F>& a) {
    Mat<F> rt = a.transposed();
    std::vector<int> pivots;
    int rank = rref(rt, &pivots);
    Mat<F> basis(a.rows(), rank);
    for (int r = 0; r < rank; ++r)
        for (int j = 0; j < a.rows(); ++j) basis.at(j, r) = rt.at(r, j);
    return basis;
}

/// Intersection of two subspaces given by basis columns.
template <typename F>
Mat<F> subspace_intersection(const Mat<F>& b1, const Mat<F>& b2) {
    assert(b1.rows() == b2.rows());
    if (b1.cols() == 0 || b2.cols() == 0) return Mat<F>(b1.rows(), 0);
    Mat<F> joint(b1.rows(), b1.cols() + b2.cols());
    for (int i = 0; i < b1.rows(); ++i) {
        for (int j = 0; j < b1.cols(); ++j) joint.at(i, j) = b1.at(i, j);
        for (int j = 0; j < b2.cols(); ++j) joint.at(i, b1.cols() + j) = -b2.at(i, j);
    }
    Mat<F> ns = nullspace(joint);
    Mat<F> mixed(b1.rows(), ns.cols());
    for (int k = 0; k < ns.cols(); ++k)
        for (int i = 0; i < b1.rows(); ++i) {
            F s{};
            for (int j = 0; j < b1.cols(); ++j) s += b1.at(i, j) * ns.at(j, k);
            mixed.at(i, k) = s;
        }
    return column_space(mixed);
}

} // namespace polycompat
