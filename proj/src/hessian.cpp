#include "rotator/hessian.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rotator {

Mat<5> HessianBlocks::assemble() const {
    Mat<5> H;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) H(i, j) = A(i, j);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) {
            H(i, j + 2) = B(i, j);
            H(j + 2, i) = B(i, j);
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) H(i + 2, j + 2) = C(i, j);
    return H;
}

namespace {

struct ChartGeometry {
    Vec<2> w;
    Vec<3> n;
    Vec<3> V;
    double Q;
    double s;  // sqrt(1 - V.V)
    double D;  // 1 - N.V
};

ChartGeometry geometry(const ChartState& state) {
    state.validate();
    ChartGeometry g;
    g.w = state.w_vector();
    g.n = state.n_vector();
    g.V = state.V;
    g.D = 1.0 - dot(g.n, g.V);
    g.s = std::sqrt(1.0 - dot(g.V, g.V));
    g.Q = (g.w[0] * g.w[0] + g.w[1] * g.w[1]) / (g.D * g.D);
    return g;
}

} // namespace

HessianBlocks hessian_blocks(const RotatorProfile& profile, const ChartState& state) {
    const ChartGeometry g = geometry(state);
    const ProfileDerivs d = profile.eval(g.Q);
    const double D2 = g.D * g.D;

    HessianBlocks blocks;

    // A = 2Qf' s/(w.w) (I + 2(Qf''/f') ww^T/(w.w)), with the removable
    // w.w factors cancelled so Q = 0 states stay evaluable.
    blocks.A = (2.0 * d.fp * g.s / D2) * Mat<2>::identity() +
               (4.0 * g.s * d.fpp / (D2 * D2)) * outer<2>(g.w, g.w);

    blocks.B = (4.0 * g.s * (d.fp + g.Q * d.fpp) / (D2 * g.D)) * outer_rc<2, 3>(g.w, g.n) -
               (2.0 * d.fp / (g.s * D2)) * outer_rc<2, 3>(g.w, g.V);

    const Mat<3> nv = outer<3>(g.n, g.V);
    blocks.C = -(d.f / g.s) * Mat<3>::identity() -
               (d.f / (g.s * g.s * g.s)) * outer<3>(g.V, g.V) -
               (2.0 * g.Q * d.fp / (g.s * g.D)) * (nv + nv.transposed()) +
               (2.0 * g.s * (3.0 * g.Q * d.fp + 2.0 * g.Q * g.Q * d.fpp) / D2) *
                   outer<3>(g.n, g.n);
    return blocks;
}

Mat<5> numeric_hessian(const RotatorProfile& profile, const ChartState& state,
                       HessianMethod method) {
    state.validate();
    const Vec<3> n = state.n_vector();
    const Vec<2> w = state.w_vector();
    const Vec<5> x{w[0], w[1], state.V[0], state.V[1], state.V[2]};
    if (method == HessianMethod::Dual) {
        return hessian_of(
            [&](const std::array<Dual2<5>, 5>& q) {
                return lagrangian_wv(profile, q[0], q[1], {q[2], q[3], q[4]}, n);
            },
            x);
    }
    return fd_hessian_of(
        [&](const Vec<5>& q) {
            return lagrangian_wv(profile, q[0], q[1], std::array<double, 3>{q[2], q[3], q[4]},
                                 n);
        },
        x);
}

Mat<2> inverse_A(const RotatorProfile& profile, const ChartState& state) {
    const ChartGeometry g = geometry(state);
    const ProfileDerivs d = profile.eval(g.Q);
    const double denom = d.fp + 2.0 * g.Q * d.fpp;
    if (std::abs(denom) < 1e-12 * (std::abs(d.fp) + std::abs(2.0 * g.Q * d.fpp)) ||
        d.fp == 0.0)
        throw SingularBlock("A block singular: f' + 2Q f'' ~ 0");

    Mat<2> inv = (g.D * g.D / (2.0 * d.fp * g.s)) * Mat<2>::identity();
    const double ww = g.w[0] * g.w[0] + g.w[1] * g.w[1];
    if (ww > 0.0) {
        const double coef =
            (g.D * g.D / (2.0 * d.fp * g.s)) * (2.0 * g.Q * d.fpp / denom) / ww;
        inv -= coef * outer<2>(g.w, g.w);
    }
    return inv;
}

double closed_det_H(const RotatorProfile& profile, const ChartState& state) {
    const ChartGeometry g = geometry(state);
    const ProfileDerivs d = profile.eval(g.Q);
    const double D4 = g.D * g.D * g.D * g.D;
    const double s3 = g.s * g.s * g.s;
    // -4 f^3 f'^2 / (D^4 s^3) * (1 + 2Q(f'/f + f''/f')), expanded so the
    // f' = 0 limit stays finite.
    const double factor =
        d.fp * d.fp + 2.0 * g.Q * (d.fp * d.fp * d.fp / d.f + d.fp * d.fpp);
    return -4.0 * d.f * d.f * d.f * factor / (D4 * s3);
}

double schur_det_H(const RotatorProfile& profile, const ChartState& state) {
    const HessianBlocks blocks = hessian_blocks(profile, state);
    const Mat<2> Ainv = inverse_A(profile, state);
    const Mat<3> schur = blocks.C - blocks.B.transposed() * Ainv * blocks.B;
    return lu_det(blocks.A) * lu_det(schur);
}

namespace {

ScanRow scan_one(const RotatorProfile& profile, int state_id, std::uint64_t seed) {
    SplitRng rng = SplitRng::substream(seed, static_cast<std::uint64_t>(state_id));
    const ChartState state = sample_state(profile, rng);

    ScanRow row;
    row.state_id = state_id;
    row.Q = chart_Q(state);
    row.det_closed = closed_det_H(profile, state);

    const Mat<5> H = numeric_hessian(profile, state);
    row.det_numeric = lu_det(H);

    const Vec<5> ev = jacobi_eigenvalues(H);
    double lo = std::abs(ev[0]), hi = std::abs(ev[0]);
    for (int i = 1; i < 5; ++i) {
        lo = std::min(lo, std::abs(ev[i]));
        hi = std::max(hi, std::abs(ev[i]));
    }
    row.sigma_ratio = hi > 0.0 ? lo / hi : 0.0;
    row.rel_det = hi > 0.0 ? std::abs(row.det_numeric) / std::pow(hi, 5) : 0.0;
    return row;
}

ScanReport finalize(ScanReport report) {
    if (report.rows.empty()) return report;
    report.max_rel_det = report.min_rel_det = report.rows[0].rel_det;
    report.max_sigma_ratio = report.min_sigma_ratio = report.rows[0].sigma_ratio;
    for (const ScanRow& r : report.rows) {
        report.max_rel_det = std::max(report.max_rel_det, r.rel_det);
        report.min_rel_det = std::min(report.min_rel_det, r.rel_det);
        report.max_sigma_ratio = std::max(report.max_sigma_ratio, r.sigma_ratio);
        report.min_sigma_ratio = std::min(report.min_sigma_ratio, r.sigma_ratio);
    }
    return report;
}

} // namespace

ScanReport degeneracy_scan_serial(const RotatorProfile& profile, int n_states,
                                  std::uint64_t seed) {
    ScanReport report;
    report.profile = profile.name();
    report.seed = seed;
    report.rows.resize(static_cast<std::size_t>(n_states));
    for (int i = 0; i < n_states; ++i) report.rows[i] = scan_one(profile, i, seed);
    return finalize(std::move(report));
}

ScanReport degeneracy_scan_parallel(const RotatorProfile& profile, int n_states,
                                    std::uint64_t seed) {
    ScanReport report;
    report.profile = profile.name();
    report.seed = seed;
    report.rows.resize(static_cast<std::size_t>(n_states));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_states; ++i) report.rows[i] = scan_one(profile, i, seed);
    return finalize(std::move(report));
}

ScanReport degeneracy_scan(const RotatorProfile& profile, int n_states, std::uint64_t seed,
                           bool parallel) {
    return parallel ? degeneracy_scan_parallel(profile, n_states, seed)
                    : degeneracy_scan_serial(profile, n_states, seed);
}

} // namespace rotator
