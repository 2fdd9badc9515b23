#include <doctest.h>

#include <cmath>
#include <vector>

#include "rotator/errors.hpp"
#include "rotator/profiles.hpp"

using namespace rotator;

namespace {

// Central-difference derivative with a step-size sweep: among a log-spaced
// ladder of steps, pick the estimate that is most stable against halving
// the step (the plateau between truncation and roundoff).
template <class F>
double fd_derivative(F&& f, double x, double h0 = 0.0) {
    if (h0 == 0.0) h0 = 1e-2 * (1.0 + std::abs(x));
    double best = 0.0, best_gap = 1e300;
    for (double h = h0; h > 1e-8; h *= 0.5) {
        const double est = (f(x + h) - f(x - h)) / (2.0 * h);
        const double est_half = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
        const double gap = std::abs(est - est_half);
        if (gap < best_gap) {
            best_gap = gap;
            best = est_half;
        }
    }
    return best;
}

template <class F>
double fd_second_derivative(F&& f, double x, double h0 = 0.0) {
    if (h0 == 0.0) h0 = 1e-1 * (1.0 + std::abs(x));
    double best = 0.0, best_gap = 1e300;
    for (double h = h0; h > 1e-5; h *= 0.5) {
        const auto second = [&](double step) {
            return (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step);
        };
        const double est = second(h), est_half = second(0.5 * h);
        const double gap = std::abs(est - est_half);
        if (gap < best_gap) {
            best_gap = gap;
            best = est_half;
        }
    }
    return best;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::exp(std::log(hi / lo) * i / (n - 1));
    return g;
}

} // namespace

TEST_CASE("fundamental profile values at Q = 1") {
    const RotatorProfile p = RotatorProfile::fundamental();
    const ProfileDerivs d = p.eval(1.0);
    CHECK(d.f == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(d.fp == doctest::Approx(1.0 / (4.0 * std::sqrt(2.0))).epsilon(1e-15));
    // second derivative frozen from the finite-difference oracle
    CHECK(d.fpp == doctest::Approx(-0.11048543456039805).epsilon(1e-10));
}

TEST_CASE("affine and partner edge values") {
    const RotatorProfile affine = RotatorProfile::affine(1.0);
    const ProfileDerivs d = affine.eval(0.0);
    CHECK(d.f == 1.0);
    CHECK(d.fp == 1.0);
    CHECK(d.fpp == 0.0);

    const RotatorProfile partner = RotatorProfile::partner();
    CHECK_THROWS_AS(partner.eval(1.0), DomainError);
    CHECK_THROWS_AS(partner.eval(1.5), DomainError);
    CHECK_THROWS_AS(RotatorProfile::fundamental().eval(0.0), DomainError);
    CHECK_THROWS_AS(RotatorProfile::fundamental().eval(-1.0), DomainError);
    CHECK(partner.eval(0.25).f == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("analytic derivatives match the finite-difference oracle") {
    const std::vector<RotatorProfile> profiles = {
        RotatorProfile::fundamental(), RotatorProfile::partner(), RotatorProfile::affine(1.0),
        RotatorProfile::affine(0.3), RotatorProfile::deformed(1e-2),
        RotatorProfile::custom(2.0, 3.0)};
    for (const RotatorProfile& p : profiles) {
        const double hi = std::min(0.8, 0.8 * p.domain_hi());
        for (double Q : log_grid(0.05, hi, 7)) {
            const ProfileDerivs d = p.eval(Q);
            const auto f = [&](double q) { return p.eval(q).f; };
            // keep the step ladder inside the domain
            const double room = 0.4 * std::min(Q - p.domain_lo(), p.domain_hi() - Q);
            const double fp_fd = fd_derivative(f, Q, std::min(room, 1e-2 * (1.0 + Q)));
            const double fpp_fd = fd_second_derivative(f, Q, std::min(room, 1e-1 * (1.0 + Q)));
            CHECK(d.fp == doctest::Approx(fp_fd).epsilon(1e-7));
            CHECK(d.fpp == doctest::Approx(fpp_fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("degeneracy factor vanishes on the degenerate family only") {
    const RotatorProfile fundamental = RotatorProfile::fundamental();
    for (double Q : {0.01, 1.0, 100.0}) CHECK(std::abs(degeneracy_factor(fundamental, Q)) < 1e-12);

    for (double Q : log_grid(1e-3, 1e3, 100))
        CHECK(std::abs(degeneracy_factor(fundamental, Q)) < 1e-12);
    const RotatorProfile partner = RotatorProfile::partner();
    for (double Q : log_grid(1e-3, 0.99, 100))
        CHECK(std::abs(degeneracy_factor(partner, Q)) < 1e-12);
    const RotatorProfile custom = RotatorProfile::custom(2.0, 3.0);
    for (double Q : log_grid(1e-3, 1e3, 100))
        CHECK(std::abs(degeneracy_factor(custom, Q)) < 1e-12);

    // affine: 1 + 2Q/(1+Q) at f' = 1, f'' = 0
    CHECK(degeneracy_factor(RotatorProfile::affine(1.0), 1.0) == doctest::Approx(2.0));

    // a small deformation lifts the factor measurably
    const RotatorProfile deformed = RotatorProfile::deformed(1e-3);
    const double g = degeneracy_factor(deformed, 1.0);
    CHECK(std::abs(g) > 1e-4);

    // cross-check against a finite-difference evaluation of the factor
    const auto f = [&](double q) { return deformed.eval(q).f; };
    const double fp = fd_derivative(f, 1.0);
    const double fpp = fd_second_derivative(f, 1.0);
    const double g_fd = 1.0 + 2.0 * (fp / deformed.eval(1.0).f + fpp / fp);
    CHECK(g == doctest::Approx(g_fd).epsilon(1e-4));
}

TEST_CASE("degeneracy factor error paths") {
    CHECK_THROWS_AS(degeneracy_factor(RotatorProfile::partner(), 2.0), DomainError);
    // affine with a = 0 has f' = 0 identically
    CHECK_THROWS_AS(degeneracy_factor(RotatorProfile::affine(0.0), 1.0), SingularDerivative);
}

TEST_CASE("casimir invariants") {
    const RotatorProfile fundamental = RotatorProfile::fundamental();
    const double m = 1.7, ell = 0.6;
    for (double Q : log_grid(1e-2, 1e2, 100)) {
        CHECK(casimir_mass_sq(fundamental, Q, m) == doctest::Approx(m * m).epsilon(1e-12));
        CHECK(casimir_spin_sq(fundamental, Q, m, ell) ==
              doctest::Approx(-0.25 * m * m * m * m * ell * ell).epsilon(1e-12));
    }
    const RotatorProfile partner = RotatorProfile::partner();
    for (double Q : log_grid(1e-2, 0.95, 50)) {
        CHECK(casimir_mass_sq(partner, Q, m) == doctest::Approx(m * m).epsilon(1e-12));
        CHECK(casimir_spin_sq(partner, Q, m, ell) ==
              doctest::Approx(-0.25 * m * m * m * m * ell * ell).epsilon(1e-12));
    }

    const RotatorProfile affine = RotatorProfile::affine(1.0);
    CHECK(casimir_mass_sq(affine, 0.25, 1.0) == doctest::Approx(5.0 / 16.0).epsilon(1e-14));
    CHECK(casimir_mass_sq(affine, 0.0, 1.0) == doctest::Approx(1.0));
    CHECK(casimir_spin_sq(affine, 0.25, 1.0, 1.0) ==
          doctest::Approx(-25.0 / 16.0).epsilon(1e-14));
    // Q -> 0 with bounded f': the spin Casimir dies with Q
    CHECK(std::abs(casimir_spin_sq(affine, 1e-12, 1.0, 1.0)) < 1e-11);
}

TEST_CASE("non-degenerate profiles are detectably outside the closed-form family") {
    const auto grid = log_grid(0.1, 3.0, 25);
    const auto family_distance = [&](const RotatorProfile& p) {
        double best = 1e300;
        for (double Qa : grid) {
            const ProfileDerivs d = p.eval(Qa);
            const auto [c1, c2] = fit_degenerate_family(Qa, d.f, d.fp);
            double worst = 0.0;
            for (double Q : grid) {
                const double member = c1 * std::sqrt(1.0 + c2 * std::sqrt(Q));
                if (!std::isfinite(member)) { worst = 1e300; break; }
                worst = std::max(worst, std::abs(p.eval(Q).f - member) / p.eval(Q).f);
            }
            best = std::min(best, worst);
        }
        return best;
    };
    CHECK(family_distance(RotatorProfile::affine(1.0)) > 1e-3);
    CHECK(family_distance(RotatorProfile::deformed(1e-2)) > 1e-5);
    // sanity: a family member itself fits to rounding
    CHECK(family_distance(RotatorProfile::custom(2.0, 3.0)) < 1e-12);
}

TEST_CASE("degeneracy ODE reproduces the closed-form family") {
    // fundamental initial data
    const double f0 = std::sqrt(2.0), f0p = 1.0 / (4.0 * std::sqrt(2.0));
    const auto table = solve_degeneracy_ode(1.0, f0, f0p, 10.0, 10000);
    REQUIRE(table.size() == 10001);
    double max_err = 0.0;
    for (const OdeSample& s : table) {
        const double exact = std::sqrt(1.0 + std::sqrt(s.Q));
        max_err = std::max(max_err, std::abs(s.f - exact) / exact);
    }
    CHECK(max_err < 1e-8);

    // c1 = 2, c2 = 3 member
    const double g0 = 2.0 * 3.0 / (4.0 * std::sqrt(1.0 + 3.0));
    const auto table2 = solve_degeneracy_ode(1.0, 2.0 * std::sqrt(4.0), g0, 10.0, 10000);
    for (const OdeSample& s : table2) {
        const double exact = 2.0 * std::sqrt(1.0 + 3.0 * std::sqrt(s.Q));
        CHECK(std::abs(s.f - exact) / exact < 1e-8);
    }

    CHECK_THROWS_AS(solve_degeneracy_ode(1.0, 1.0, 0.0, 2.0, 100), SingularDerivative);
}

TEST_CASE("degeneracy ODE error scales as h^4") {
    const double f0 = std::sqrt(2.0), f0p = 1.0 / (4.0 * std::sqrt(2.0));
    const auto err_at = [&](int steps) {
        const auto table = solve_degeneracy_ode(1.0, f0, f0p, 10.0, steps);
        double max_err = 0.0;
        for (const OdeSample& s : table)
            max_err = std::max(max_err, std::abs(s.f - std::sqrt(1.0 + std::sqrt(s.Q))));
        return max_err;
    };
    const double e1 = err_at(200), e2 = err_at(400);
    const double order = std::log2(e1 / e2);
    CHECK(order > 3.7);
    CHECK(order < 4.3);
}

TEST_CASE("profile string parsing") {
    CHECK(RotatorProfile::parse("fundamental").variant() ==
          RotatorProfile::Variant::Fundamental);
    CHECK(RotatorProfile::parse("partner").variant() == RotatorProfile::Variant::Partner);
    CHECK(RotatorProfile::parse("affine:1.5").eval(1.0).f == doctest::Approx(2.5));
    CHECK(RotatorProfile::parse("deformed:1e-3").name() == "deformed:0.001");
    CHECK(RotatorProfile::parse("custom:2:3").eval(1.0).f == doctest::Approx(4.0));
    CHECK_THROWS_AS(RotatorProfile::parse("spline"), ConfigError);
    CHECK_THROWS_AS(RotatorProfile::parse("affine:x"), ConfigError);
    CHECK_THROWS_AS(RotatorProfile::parse("custom:1"), ConfigError);
}
