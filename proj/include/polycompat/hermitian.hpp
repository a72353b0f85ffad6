#pragma once

#include "polycompat/matrix.hpp"
#include "polycompat/rational.hpp"

#include <cassert>
#include <complex>
#include <stdexcept>
#include <vector>

namespace polycompat {

using CDouble = std::complex<double>;

/// Backend traits for the two Hermitian scalar types: exact Gaussian
/// rationals and complex doubles.
template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<GRational> {
    using real_type = Rational;
    static constexpr bool exact = true;
    static GRational conj(const GRational& z) { return z.conj(); }
    static Rational real(const GRational& z) { return z.re; }
    static GRational from_real(const Rational& r) { return GRational(r); }
    static bool is_zero(const GRational& z) { return z.is_zero(); }
};

template <>
struct scalar_traits<CDouble> {
    using real_type = double;
    static constexpr bool exact = false;
    static CDouble conj(const CDouble& z) { return std::conj(z); }
    static double real(const CDouble& z) { return z.real(); }
    static CDouble from_real(double r) { return CDouble(r, 0.0); }
    static bool is_zero(const CDouble& z) { return z == CDouble(0.0, 0.0); }
};

/// Hermitian d x d matrix. Only the lower triangle is stored, row-major;
/// diagonal imaginary parts are zero by construction.
template <typename S>
class HermMatrix {
public:
    using traits = scalar_traits<S>;
    using real_type = typename traits::real_type;

    HermMatrix() : d_(0) {}
    explicit HermMatrix(int d) : d_(d), low_(static_cast<size_t>(d) * (d + 1) / 2) {}

    static HermMatrix identity(int d) {
        HermMatrix m(d);
        for (int i = 0; i < d; ++i) m.set(i, i, S(1));
        return m;
    }
    static HermMatrix zero(int d) { return HermMatrix(d); }

    int dim() const { return d_; }

    S operator()(int i, int j) const {
        assert(i >= 0 && i < d_ && j >= 0 && j < d_);
        if (j <= i) return low_[idx(i, j)];
        return traits::conj(low_[idx(j, i)]);
    }

    void set(int i, int j, const S& v) {
        assert(i >= 0 && i < d_ && j >= 0 && j < d_);
        if (i == j) {
            low_[idx(i, i)] = traits::from_real(traits::real(v));
        } else if (j < i) {
            low_[idx(i, j)] = v;
        } else {
            low_[idx(j, i)] = traits::conj(v);
        }
    }

    HermMatrix& operator+=(const HermMatrix& o) {
        assert(d_ == o.d_);
        for (size_t k = 0; k < low_.size(); ++k) low_[k] += o.low_[k];
        return *this;
    }
    HermMatrix& operator-=(const HermMatrix& o) {
        assert(d_ == o.d_);
        for (size_t k = 0; k < low_.size(); ++k) low_[k] -= o.low_[k];
        return *this;
    }
    /// Scaling is by a real scalar only; complex scaling would break hermiticity.
    HermMatrix& scale(const real_type& r) {
        S s = traits::from_real(r);
        for (auto& e : low_) e *= s;
        return *this;
    }

    friend HermMatrix operator+(HermMatrix a, const HermMatrix& b) { return a += b; }
    friend HermMatrix operator-(HermMatrix a, const HermMatrix& b) { return a -= b; }
    friend HermMatrix operator-(const HermMatrix& a) {
        HermMatrix r = a;
        return r.scale(real_type(-1));
    }
    friend HermMatrix operator*(const real_type& r, HermMatrix a) { return a.scale(r); }

    friend bool operator==(const HermMatrix& a, const HermMatrix& b) {
        return a.d_ == b.d_ && a.low_ == b.low_;
    }
    friend bool operator!=(const HermMatrix& a, const HermMatrix& b) { return !(a == b); }

    bool is_zero() const {
        for (const auto& e : low_)
            if (!traits::is_zero(e)) return false;
        return true;
    }

    real_type trace() const {
        real_type t{};
        for (int i = 0; i < d_; ++i) t += traits::real((*this)(i, i));
        return t;
    }

    Mat<S> to_full() const {
        Mat<S> m(d_, d_);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) m.at(i, j) = (*this)(i, j);
        return m;
    }

private:
    static size_t idx(int i, int j) { return static_cast<size_t>(i) * (i + 1) / 2 + j; }
    int d_;
    std::vector<S> low_;
};

using HermX = HermMatrix<GRational>;  // exact Gaussian-rational backend
using HermF = HermMatrix<CDouble>;    // floating backend

inline HermF to_float(const HermX& x) {
    HermF f(x.dim());
    for (int i = 0; i < x.dim(); ++i)
        for (int j = 0; j <= i; ++j) {
            GRational z = x(i, j);
            f.set(i, j, CDouble(to_double(z.re), to_double(z.im)));
        }
    return f;
}

/// Largest absolute entry deviation between two Hermitian matrices.
inline double max_abs_diff(const HermF& a, const HermF& b) {
    assert(a.dim() == b.dim());
    double m = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j <= i; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

/// g-tuple of Hermitian matrices with a common dimension and backend.
template <typename S>
struct HermTuple {
    std::vector<HermMatrix<S>> entries;

    HermTuple() = default;
    explicit HermTuple(std::vector<HermMatrix<S>> e) : entries(std::move(e)) {
        for (const auto& m : entries)
            if (m.dim() != dim()) throw std::invalid_argument("tuple with mixed dimensions");
    }
    static HermTuple zeros(int g, int d) {
        return HermTuple(std::vector<HermMatrix<S>>(g, HermMatrix<S>::zero(d)));
    }

    int g() const { return static_cast<int>(entries.size()); }
    int dim() const { return entries.empty() ? 0 : entries.front().dim(); }
    const HermMatrix<S>& operator[](int x) const { return entries[x]; }
    HermMatrix<S>& operator[](int x) { return entries[x]; }

    friend bool operator==(const HermTuple& a, const HermTuple& b) {
        return a.entries == b.entries;
    }
};

using TupleX = HermTuple<GRational>;
using TupleF = HermTuple<CDouble>;

inline TupleF to_float(const TupleX& t) {
    std::vector<HermF> e;
    e.reserve(t.entries.size());
    for (const auto& m : t.entries) e.push_back(to_float(m));
    return TupleF(std::move(e));
}

/// Entrywise scaling (s_1 A_1, ..., s_g A_g).
inline TupleX scaled(const TupleX& a, const RVector& s) {
    assert(static_cast<int>(s.size()) == a.g());
    TupleX r = a;
    for (int x = 0; x < a.g(); ++x) r[x].scale(s[x]);
    return r;
}
inline TupleX scaled(const TupleX& a, const Rational& s) {
    return scaled(a, RVector(a.g(), s));
}

} // namespace polycompat
