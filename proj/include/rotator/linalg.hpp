#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace rotator {

template <std::size_t N>
using Vec = std::array<double, N>;

/// Dense fixed-size matrix, row major. Sized for the 5x5 Hessian work;
/// not a general linear-algebra library.
template <std::size_t R, std::size_t C = R>
struct Mat {
    std::array<double, R * C> a{};

    double& operator()(std::size_t i, std::size_t j) { return a[i * C + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * C + j]; }

    static Mat identity() {
        Mat m;
        for (std::size_t i = 0; i < (R < C ? R : C); ++i) m(i, i) = 1.0;
        return m;
    }

    Mat<C, R> transposed() const {
        Mat<C, R> t;
        for (std::size_t i = 0; i < R; ++i)
            for (std::size_t j = 0; j < C; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat& operator+=(const Mat& o) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += o.a[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] -= o.a[k];
        return *this;
    }
    Mat& operator*=(double s) {
        for (double& x : a) x *= s;
        return *this;
    }
    friend Mat operator+(Mat l, const Mat& r) { return l += r; }
    friend Mat operator-(Mat l, const Mat& r) { return l -= r; }
    friend Mat operator*(Mat l, double s) { return l *= s; }
    friend Mat operator*(double s, Mat r) { return r *= s; }

    double max_abs() const {
        double m = 0.0;
        for (double x : a) m = std::max(m, std::abs(x));
        return m;
    }
};

template <std::size_t R, std::size_t K, std::size_t C>
inline Mat<R, C> operator*(const Mat<R, K>& l, const Mat<K, C>& r) {
    Mat<R, C> out;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t k = 0; k < K; ++k) {
            const double lik = l(i, k);
            for (std::size_t j = 0; j < C; ++j) out(i, j) += lik * r(k, j);
        }
    return out;
}

template <std::size_t R, std::size_t C>
inline Vec<R> operator*(const Mat<R, C>& m, const Vec<C>& v) {
    Vec<R> out{};
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) out[i] += m(i, j) * v[j];
    return out;
}

template <std::size_t N>
inline Mat<N, N> outer(const Vec<N>& u, const Vec<N>& v) {
    Mat<N, N> m;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) m(i, j) = u[i] * v[j];
    return m;
}

template <std::size_t R, std::size_t C>
inline Mat<R, C> outer_rc(const Vec<R>& u, const Vec<C>& v) {
    Mat<R, C> m;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) m(i, j) = u[i] * v[j];
    return m;
}

template <std::size_t N>
inline double dot(const Vec<N>& u, const Vec<N>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += u[i] * v[i];
    return s;
}

/// Determinant by LU decomposition with partial pivoting.
template <std::size_t N>
inline double lu_det(Mat<N, N> m) {
    double det = 1.0;
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
        if (m(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < N; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < N; ++r) {
            const double f = m(r, col) / m(col, col);
            for (std::size_t j = col; j < N; ++j) m(r, j) -= f * m(col, j);
        }
    }
    return det;
}

/// Solve m x = b by LU with partial pivoting. Returns false if singular
/// to working precision.
template <std::size_t N>
inline bool lu_solve(Mat<N, N> m, Vec<N> b, Vec<N>& x) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
        if (m(piv, col) == 0.0) return false;
        if (piv != col) {
            for (std::size_t j = 0; j < N; ++j) std::swap(m(piv, j), m(col, j));
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < N; ++r) {
            const double f = m(r, col) / m(col, col);
            for (std::size_t j = col; j < N; ++j) m(r, j) -= f * m(col, j);
            b[r] -= f * b[col];
        }
    }
    for (std::size_t ir = N; ir-- > 0;) {
        double s = b[ir];
        for (std::size_t j = ir + 1; j < N; ++j) s -= m(ir, j) * x[j];
        x[ir] = s / m(ir, ir);
    }
    return true;
}

/**
 * Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
 * Converges to machine precision in a handful of sweeps for N <= 10;
 * used for singular values (|lambda|) of the symmetric Hessian.
 */
template <std::size_t N>
inline Vec<N> jacobi_eigenvalues(Mat<N, N> m) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) off += m(i, j) * m(i, j);
        if (off < 1e-300) break;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) {
                if (m(p, q) == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
    }
    Vec<N> ev;
    for (std::size_t i = 0; i < N; ++i) ev[i] = m(i, i);
    return ev;
}

/// sigma_min / sigma_max of a symmetric matrix (0 if sigma_max = 0).
template <std::size_t N>
inline double singular_value_ratio(const Mat<N, N>& m) {
    Vec<N> ev = jacobi_eigenvalues(m);
    double lo = std::abs(ev[0]), hi = std::abs(ev[0]);
    for (std::size_t i = 1; i < N; ++i) {
        lo = std::min(lo, std::abs(ev[i]));
        hi = std::max(hi, std::abs(ev[i]));
    }
    return hi > 0.0 ? lo / hi : 0.0;
}

/// Spectral norm of a symmetric matrix.
template <std::size_t N>
inline double spectral_norm_sym(const Mat<N, N>& m) {
    Vec<N> ev = jacobi_eigenvalues(m);
    double hi = 0.0;
    for (std::size_t i = 0; i < N; ++i) hi = std::max(hi, std::abs(ev[i]));
    return hi;
}

} // namespace rotator
