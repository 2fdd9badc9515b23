#include <doctest.h>

#include <cmath>
#include <vector>

#include "rotator/dynamics.hpp"
#include "rotator/hessian.hpp"
#include "rotator/rng.hpp"

using namespace rotator;

namespace {

ChartState example_state() {
    ChartState s;
    s.theta = M_PI / 2;
    s.phi_sph = 0.0;
    s.V = {0.1, 0.0, 0.0};
    s.theta_dot = 0.2;
    s.phi_sph_dot = 0.3;
    return s;
}

std::vector<RotatorProfile> variant_set() {
    return {RotatorProfile::fundamental(), RotatorProfile::partner(),
            RotatorProfile::affine(1.0), RotatorProfile::deformed(1e-2)};
}

} // namespace

TEST_CASE("assembled Hessian is exactly symmetric") {
    const HessianBlocks blocks = hessian_blocks(RotatorProfile::affine(1.0), example_state());
    const Mat<5> H = blocks.assemble();
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(H(i, j) == H(j, i));
}

TEST_CASE("closed-form blocks match the dual-number Hessian") {
    // the worked example state first
    {
        const Mat<5> closed =
            hessian_blocks(RotatorProfile::affine(1.0), example_state()).assemble();
        const Mat<5> numeric = numeric_hessian(RotatorProfile::affine(1.0), example_state());
        const double scale = numeric.max_abs();
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                CHECK(std::abs(closed(i, j) - numeric(i, j)) < 1e-7 * scale);
    }

    // 1000 random (profile, state) pairs across the four variants
    SplitRng rng(2024);
    const auto profiles = variant_set();
    for (int trial = 0; trial < 1000; ++trial) {
        const RotatorProfile& profile = profiles[trial % profiles.size()];
        const ChartState s = sample_state(profile, rng);
        const Mat<5> closed = hessian_blocks(profile, s).assemble();
        const Mat<5> numeric = numeric_hessian(profile, s);
        const double scale = numeric.max_abs();
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                CHECK(std::abs(closed(i, j) - numeric(i, j)) < 1e-7 * scale);
    }
}

TEST_CASE("dual and central-difference Hessians agree") {
    SplitRng rng(55);
    for (const RotatorProfile& profile : variant_set()) {
        const ChartState s = sample_state(profile, rng);
        const Mat<5> dual = numeric_hessian(profile, s, HessianMethod::Dual);
        const Mat<5> fd = numeric_hessian(profile, s, HessianMethod::CentralDiff);
        const double scale = dual.max_abs();
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                CHECK(std::abs(dual(i, j) - fd(i, j)) < 1e-6 * scale);
    }
}

TEST_CASE("fundamental Hessian is numerically singular") {
    SplitRng rng(31);
    const RotatorProfile fundamental = RotatorProfile::fundamental();
    for (int trial = 0; trial < 100; ++trial) {
        const ChartState s = sample_state(fundamental, rng);
        const Mat<5> H = numeric_hessian(fundamental, s);
        const double norm = spectral_norm_sym(H);
        CHECK(std::abs(lu_det(hessian_blocks(fundamental, s).assemble())) <
              1e-10 * std::pow(norm, 5));
        CHECK(singular_value_ratio(H) < 1e-9);
    }
}

TEST_CASE("inverse_A against the generic inverse") {
    SplitRng rng(67);
    const RotatorProfile affine = RotatorProfile::affine(1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const ChartState s = sample_state(affine, rng);
        const Mat<2> A = hessian_blocks(affine, s).A;
        const Mat<2> Ainv = inverse_A(affine, s);
        const Mat<2> prod = A * Ainv;
        CHECK(std::abs(prod(0, 0) - 1.0) < 1e-12);
        CHECK(std::abs(prod(1, 1) - 1.0) < 1e-12);
        CHECK(std::abs(prod(0, 1)) < 1e-12);
        CHECK(std::abs(prod(1, 0)) < 1e-12);

        // generic 2x2 inverse oracle
        const double det = lu_det(A);
        const double scale = Ainv.max_abs();
        CHECK(std::abs(Ainv(0, 0) - A(1, 1) / det) < 1e-12 * scale);
        CHECK(std::abs(Ainv(1, 1) - A(0, 0) / det) < 1e-12 * scale);
        CHECK(std::abs(Ainv(0, 1) + A(0, 1) / det) < 1e-12 * scale);
    }

    // the degeneracy of the fundamental profile lives in the Schur
    // complement; A itself stays invertible
    const RotatorProfile fundamental = RotatorProfile::fundamental();
    for (int trial = 0; trial < 50; ++trial) {
        const ChartState s = sample_state(fundamental, rng);
        const ProfileDerivs d = fundamental.eval(chart_Q(s));
        CHECK(std::abs(1.0 + 2.0 * chart_Q(s) * d.fpp / d.fp) > 1e-3);
        CHECK_NOTHROW(inverse_A(fundamental, s));
    }
}

TEST_CASE("closed determinant formula") {
    SplitRng rng(91);
    const RotatorProfile fundamental = RotatorProfile::fundamental();
    for (int trial = 0; trial < 100; ++trial) {
        const ChartState s = sample_state(fundamental, rng);
        const ProfileDerivs d = fundamental.eval(chart_Q(s));
        const double D = 1.0 - dot(s.n_vector(), s.V);
        const double ss = std::sqrt(1.0 - dot(s.V, s.V));
        const double prefactor =
            4.0 * d.f * d.f * d.f * d.fp * d.fp / (std::pow(D, 4) * std::pow(ss, 3));
        CHECK(std::abs(closed_det_H(fundamental, s)) < 1e-12 * prefactor);
    }

    // non-degenerate profiles: match the LU determinant of the dual Hessian
    for (const RotatorProfile& profile :
         {RotatorProfile::affine(1.0), RotatorProfile::deformed(1e-2)}) {
        for (int trial = 0; trial < 100; ++trial) {
            const ChartState s = sample_state(profile, rng);
            const double closed = closed_det_H(profile, s);
            const double numeric = lu_det(numeric_hessian(profile, s));
            CHECK(closed == doctest::Approx(numeric).epsilon(1e-6));
        }
    }
}

TEST_CASE("schur factorization route agrees with the closed determinant") {
    SplitRng rng(17);
    for (const RotatorProfile& profile :
         {RotatorProfile::affine(1.0), RotatorProfile::affine(0.4),
          RotatorProfile::deformed(1e-2)}) {
        for (int trial = 0; trial < 100; ++trial) {
            const ChartState s = sample_state(profile, rng);
            const ProfileDerivs d = profile.eval(chart_Q(s));
            // the factorization needs a regular A block
            if (std::abs(d.fp + 2.0 * chart_Q(s) * d.fpp) <
                1e-3 * (std::abs(d.fp) + std::abs(2.0 * chart_Q(s) * d.fpp)))
                continue;
            CHECK(schur_det_H(profile, s) ==
                  doctest::Approx(closed_det_H(profile, s)).epsilon(1e-8));
        }
    }
}

TEST_CASE("sylvester rank-one determinant identity") {
    SplitRng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        Vec<2> w{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const double ww = dot(w, w);
        if (ww < 1e-8) continue;
        const double c = rng.uniform(-3, 3);
        const Mat<2> m = Mat<2>::identity() + (c / ww) * outer<2>(w, w);
        CHECK(lu_det(m) == doctest::Approx(1.0 + c).epsilon(1e-12));
    }
}

TEST_CASE("determinant sign follows the factorized formula") {
    SplitRng rng(23);
    const RotatorProfile affine = RotatorProfile::affine(1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const ChartState s = sample_state(affine, rng);
        const double Q = chart_Q(s);
        if (Q <= 0.0) continue;
        // prefactor 4 f^3 f'^2 / (D^4 s^3) is positive for a > 0, Q > 0
        const double g = degeneracy_factor(affine, Q);
        const double det = lu_det(numeric_hessian(affine, s));
        CHECK(det * g < 0.0); // det = -prefactor * g
        CHECK(closed_det_H(affine, s) * det > 0.0);
    }
}

TEST_CASE("hessian in raw velocities carries the sin^2(theta) jacobian") {
    SplitRng rng(37);
    for (const RotatorProfile& profile : {RotatorProfile::affine(1.0)}) {
        for (int trial = 0; trial < 50; ++trial) {
            const ChartState s = sample_state(profile, rng);
            const Mat<5> raw = chart_l_derivs(profile, s).H_qdot_qdot;
            const double det_raw = lu_det(raw);
            const double det_w = lu_det(numeric_hessian(profile, s));
            const double st = std::sin(s.theta);
            CHECK(det_raw == doctest::Approx(st * st * det_w).epsilon(1e-10));
        }
    }
}

TEST_CASE("degeneracy scan classifies the family") {
    const ScanReport fund = degeneracy_scan(RotatorProfile::fundamental(), 100, 5);
    CHECK(fund.max_rel_det < 1e-9);
    CHECK(fund.max_sigma_ratio < 1e-9);

    const ScanReport partner = degeneracy_scan(RotatorProfile::partner(), 100, 5);
    CHECK(partner.max_sigma_ratio < 1e-9);

    const ScanReport deformed = degeneracy_scan(RotatorProfile::deformed(1e-2), 100, 5);
    CHECK(deformed.min_rel_det > 0.0);
    CHECK(deformed.max_rel_det > 1e-8);
    CHECK(deformed.min_sigma_ratio >= 1e-8);

    // the degeneracy measure grows monotonically with the deformation
    double previous = 0.0;
    for (double eps : {1e-4, 1e-3, 1e-2}) {
        const ScanReport r = degeneracy_scan(RotatorProfile::deformed(eps), 100, 5);
        CHECK(r.max_rel_det > previous);
        previous = r.max_rel_det;
    }
}

TEST_CASE("serial and parallel scans produce identical rows") {
    const RotatorProfile profile = RotatorProfile::deformed(1e-3);
    const ScanReport serial = degeneracy_scan_serial(profile, 64, 19);
    const ScanReport parallel = degeneracy_scan_parallel(profile, 64, 19);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].Q == parallel.rows[i].Q);
        CHECK(serial.rows[i].det_closed == parallel.rows[i].det_closed);
        CHECK(serial.rows[i].det_numeric == parallel.rows[i].det_numeric);
        CHECK(serial.rows[i].rel_det == parallel.rows[i].rel_det);
        CHECK(serial.rows[i].sigma_ratio == parallel.rows[i].sigma_ratio);
    }
}
