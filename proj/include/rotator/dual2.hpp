#pragma once

#include <array>
#include <cmath>

#include "rotator/linalg.hpp"

namespace rotator {

/**
 * Forward-mode truncated Taylor scalar carrying value, gradient and the
 * full (symmetric, packed) Hessian with respect to N seeded variables.
 * Equivalent to nesting first-order duals once; second derivatives are
 * exact to rounding, no step-size choice involved.
 */
template <int N>
class Dual2 {
public:
    static constexpr int kPacked = N * (N + 1) / 2;

    Dual2() = default;
    Dual2(double v) : val_(v) {} // NOLINT: implicit constants are the point

    /// Seed variable number `index` with value `v`.
    static Dual2 variable(double v, int index) {
        Dual2 d(v);
        d.grad_[index] = 1.0;
        return d;
    }

    double value() const { return val_; }
    double deriv(int i) const { return grad_[i]; }
    double deriv2(int i, int j) const { return hess_[pack(i, j)]; }

    Vec<N> gradient() const { return grad_; }

    Mat<N, N> hessian() const {
        Mat<N, N> h;
        for (int i = 0; i < N; ++i)
            for (int j = i; j < N; ++j) h(i, j) = h(j, i) = hess_[pack(i, j)];
        return h;
    }

    Dual2 operator-() const {
        Dual2 r(-val_);
        for (int i = 0; i < N; ++i) r.grad_[i] = -grad_[i];
        for (int k = 0; k < kPacked; ++k) r.hess_[k] = -hess_[k];
        return r;
    }

    Dual2& operator+=(const Dual2& o) {
        val_ += o.val_;
        for (int i = 0; i < N; ++i) grad_[i] += o.grad_[i];
        for (int k = 0; k < kPacked; ++k) hess_[k] += o.hess_[k];
        return *this;
    }
    Dual2& operator-=(const Dual2& o) {
        val_ -= o.val_;
        for (int i = 0; i < N; ++i) grad_[i] -= o.grad_[i];
        for (int k = 0; k < kPacked; ++k) hess_[k] -= o.hess_[k];
        return *this;
    }

    friend Dual2 operator+(Dual2 l, const Dual2& r) { return l += r; }
    friend Dual2 operator-(Dual2 l, const Dual2& r) { return l -= r; }

    friend Dual2 operator*(const Dual2& a, const Dual2& b) {
        Dual2 r(a.val_ * b.val_);
        for (int i = 0; i < N; ++i) r.grad_[i] = a.grad_[i] * b.val_ + a.val_ * b.grad_[i];
        int k = 0;
        for (int i = 0; i < N; ++i)
            for (int j = i; j < N; ++j, ++k)
                r.hess_[k] = a.hess_[k] * b.val_ + a.val_ * b.hess_[k] +
                             a.grad_[i] * b.grad_[j] + a.grad_[j] * b.grad_[i];
        return r;
    }

    friend Dual2 operator/(const Dual2& a, const Dual2& b) {
        const double inv = 1.0 / b.val_;
        return a * b.unary(inv, -inv * inv, 2.0 * inv * inv * inv);
    }

    friend Dual2 operator+(double s, Dual2 r) { r.val_ += s; return r; }
    friend Dual2 operator+(Dual2 l, double s) { l.val_ += s; return l; }
    friend Dual2 operator-(double s, const Dual2& r) { return -r + s; }
    friend Dual2 operator-(Dual2 l, double s) { l.val_ -= s; return l; }
    friend Dual2 operator*(double s, const Dual2& r) { return r.scaled(s); }
    friend Dual2 operator*(const Dual2& l, double s) { return l.scaled(s); }
    friend Dual2 operator/(const Dual2& l, double s) { return l.scaled(1.0 / s); }
    friend Dual2 operator/(double s, const Dual2& r) {
        const double inv = 1.0 / r.val_;
        return r.unary(s * inv, -s * inv * inv, 2.0 * s * inv * inv * inv);
    }

    /**
     * Chain a scalar function through this variable given its value and
     * first two derivatives at value(). This is how profile evaluations
     * f(Q), whose derivatives are analytic, enter the engine.
     */
    Dual2 unary(double f, double fp, double fpp) const {
        Dual2 r(f);
        for (int i = 0; i < N; ++i) r.grad_[i] = fp * grad_[i];
        int k = 0;
        for (int i = 0; i < N; ++i)
            for (int j = i; j < N; ++j, ++k)
                r.hess_[k] = fp * hess_[k] + fpp * grad_[i] * grad_[j];
        return r;
    }

private:
    static constexpr int pack(int i, int j) {
        if (i > j) { const int t = i; i = j; j = t; }
        return i * N - i * (i - 1) / 2 + (j - i);
    }

    Dual2 scaled(double s) const {
        Dual2 r(val_ * s);
        for (int i = 0; i < N; ++i) r.grad_[i] = grad_[i] * s;
        for (int k = 0; k < kPacked; ++k) r.hess_[k] = hess_[k] * s;
        return r;
    }

    double val_ = 0.0;
    std::array<double, N> grad_{};
    std::array<double, kPacked> hess_{};
};

template <int N>
inline Dual2<N> sqrt(const Dual2<N>& x) {
    const double s = std::sqrt(x.value());
    return x.unary(s, 0.5 / s, -0.25 / (s * x.value()));
}

template <int N>
inline Dual2<N> sin(const Dual2<N>& x) {
    const double s = std::sin(x.value()), c = std::cos(x.value());
    return x.unary(s, c, -s);
}

template <int N>
inline Dual2<N> cos(const Dual2<N>& x) {
    const double s = std::sin(x.value()), c = std::cos(x.value());
    return x.unary(c, -s, -c);
}

} // namespace rotator
