#include <doctest.h>

#include <cmath>

#include "rotator/dual2.hpp"
#include "rotator/hessian.hpp"
#include "rotator/linalg.hpp"
#include "rotator/rng.hpp"

using namespace rotator;

TEST_CASE("dual2 recovers a quadratic exactly") {
    // f(x) = x^T A x / 2 + b.x with known symmetric A
    Mat<5> A;
    SplitRng rng(3);
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) A(i, j) = A(j, i) = rng.uniform(-1, 1);
    Vec<5> b;
    for (double& x : b) x = rng.uniform(-1, 1);

    const auto quadratic = [&](const auto& q) {
        using T = std::decay_t<decltype(q[0])>;
        T acc(0.0);
        for (int i = 0; i < 5; ++i) {
            acc += b[i] * q[i];
            for (int j = 0; j < 5; ++j) acc += 0.5 * A(i, j) * q[i] * q[j];
        }
        return acc;
    };

    const Vec<5> x{0.3, -1.2, 0.5, 2.0, -0.7};
    const Mat<5> H = hessian_of(quadratic, x);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(H(i, j) == doctest::Approx(A(i, j)).epsilon(1e-14));

    // the finite-difference driver agrees on the same quadratic
    const auto quadratic_d = [&](const Vec<5>& q) {
        double acc = 0.0;
        for (int i = 0; i < 5; ++i) {
            acc += b[i] * q[i];
            for (int j = 0; j < 5; ++j) acc += 0.5 * A(i, j) * q[i] * q[j];
        }
        return acc;
    };
    const Mat<5> Hfd = fd_hessian_of(quadratic_d, x);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(Hfd(i, j) == doctest::Approx(A(i, j)).epsilon(1e-6));
}

TEST_CASE("dual2 chain rule on a transcendental function") {
    // f(x, y) = sin(x) * sqrt(y) + x / y
    using D2 = Dual2<2>;
    const double x = 0.8, y = 1.7;
    const D2 dx = D2::variable(x, 0), dy = D2::variable(y, 1);
    const D2 f = sin(dx) * sqrt(dy) + dx / dy;

    CHECK(f.value() == doctest::Approx(std::sin(x) * std::sqrt(y) + x / y).epsilon(1e-15));
    CHECK(f.deriv(0) == doctest::Approx(std::cos(x) * std::sqrt(y) + 1.0 / y).epsilon(1e-14));
    CHECK(f.deriv(1) ==
          doctest::Approx(0.5 * std::sin(x) / std::sqrt(y) - x / (y * y)).epsilon(1e-14));
    CHECK(f.deriv2(0, 0) == doctest::Approx(-std::sin(x) * std::sqrt(y)).epsilon(1e-14));
    CHECK(f.deriv2(0, 1) ==
          doctest::Approx(0.5 * std::cos(x) / std::sqrt(y) - 1.0 / (y * y)).epsilon(1e-14));
    CHECK(f.deriv2(1, 1) ==
          doctest::Approx(-0.25 * std::sin(x) / std::pow(y, 1.5) + 2.0 * x / (y * y * y))
              .epsilon(1e-14));
}

TEST_CASE("LU determinant and solve") {
    Mat<3> m;
    m(0, 0) = 2; m(0, 1) = 1; m(0, 2) = 1;
    m(1, 0) = 1; m(1, 1) = 3; m(1, 2) = 2;
    m(2, 0) = 1; m(2, 1) = 0; m(2, 2) = 0;
    // det = 1*(1*2-1*3) = -1
    CHECK(lu_det(m) == doctest::Approx(-1.0).epsilon(1e-14));

    Vec<3> x{}, b{4, 5, 6};
    REQUIRE(lu_solve(m, b, x));
    const Vec<3> back = m * x;
    for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("jacobi eigenvalues of a known symmetric matrix") {
    Mat<2> m;
    m(0, 0) = 2; m(0, 1) = 1;
    m(1, 0) = 1; m(1, 1) = 2;
    const Vec<2> ev = jacobi_eigenvalues(m);
    const double lo = std::min(ev[0], ev[1]), hi = std::max(ev[0], ev[1]);
    CHECK(lo == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(hi == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(singular_value_ratio(m) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("jacobi detects a rank-deficient matrix") {
    Vec<4> v{1, -2, 0.5, 3};
    const Mat<4> m = outer<4>(v, v); // rank one
    CHECK(singular_value_ratio(m) < 1e-14);
    CHECK(spectral_norm_sym(m) == doctest::Approx(dot(v, v)).epsilon(1e-12));
}

TEST_CASE("lu determinant matches eigenvalue product") {
    SplitRng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        Mat<5> m;
        for (int i = 0; i < 5; ++i)
            for (int j = i; j < 5; ++j) m(i, j) = m(j, i) = rng.uniform(-1, 1);
        const Vec<5> ev = jacobi_eigenvalues(m);
        double prod = 1.0;
        for (double e : ev) prod *= e;
        CHECK(lu_det(m) == doctest::Approx(prod).epsilon(1e-10));
    }
}
