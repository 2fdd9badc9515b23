#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rotator/chart.hpp"
#include "rotator/dual2.hpp"
#include "rotator/linalg.hpp"
#include "rotator/profiles.hpp"

namespace rotator {

/**
 * Closed-form blocks of the 5x5 velocity Hessian of L, ordered as
 * (w1, w2, V1, V2, V3): A is the angular 2x2 block, C the translational
 * 3x3 block, B the 2x3 coupling.
 */
struct HessianBlocks {
    Mat<2> A;
    Mat<2, 3> B;
    Mat<3> C;

    Mat<5> assemble() const;
};

/// Closed-form blocks at a state. Entries equal the second derivatives
/// of L with respect to (w, V).
HessianBlocks hessian_blocks(const RotatorProfile& profile, const ChartState& state);

enum class HessianMethod {
    Dual,       // second-order dual propagation, exact to rounding
    CentralDiff // value-based stencils, cross-validation only
};

/// Independent numeric Hessian of L with respect to (w1, w2, V1, V2, V3).
Mat<5> numeric_hessian(const RotatorProfile& profile, const ChartState& state,
                       HessianMethod method = HessianMethod::Dual);

/// Closed-form inverse of the A block via its rank-one structure.
/// Throws SingularBlock when f' + 2 Q f'' vanishes.
Mat<2> inverse_A(const RotatorProfile& profile, const ChartState& state);

/// det H = -4 f^3 f'^2 / ((1-N.V)^4 (1-V.V)^{3/2}) * (1 + 2Q(f'/f + f''/f')).
double closed_det_H(const RotatorProfile& profile, const ChartState& state);

/// det H through the block factorization det(A) det(C - B^T A^{-1} B).
double schur_det_H(const RotatorProfile& profile, const ChartState& state);

struct ScanRow {
    int state_id;
    double Q;
    double det_closed;
    double det_numeric;
    double rel_det;     // |det H| / sigma_max^5
    double sigma_ratio; // sigma_min / sigma_max
};

struct ScanReport {
    std::string profile;
    std::uint64_t seed = 0;
    std::vector<ScanRow> rows;
    double max_rel_det = 0.0;
    double min_rel_det = 0.0;
    double max_sigma_ratio = 0.0;
    double min_sigma_ratio = 0.0;
};

/**
 * Degeneracy scan over random in-domain states. Each state draws its own
 * RNG substream, so the report is identical whichever kernel runs it.
 */
ScanReport degeneracy_scan(const RotatorProfile& profile, int n_states, std::uint64_t seed,
                           bool parallel = true);

// Exposed for the benchmark target; degeneracy_scan dispatches to these.
ScanReport degeneracy_scan_serial(const RotatorProfile& profile, int n_states,
                                  std::uint64_t seed);
ScanReport degeneracy_scan_parallel(const RotatorProfile& profile, int n_states,
                                    std::uint64_t seed);

// ---------------------------------------------------------------------
// Generic Hessian drivers (the production paths instantiate these with
// the chart Lagrangian; tests substitute known functions).
// ---------------------------------------------------------------------

template <class F>
Mat<5> hessian_of(F&& f, const Vec<5>& x) {
    std::array<Dual2<5>, 5> xs;
    for (int i = 0; i < 5; ++i) xs[i] = Dual2<5>::variable(x[i], i);
    return f(xs).hessian();
}

/// Value-based central-difference Hessian. Steps scale as eps^(1/4),
/// the roundoff/truncation balance point for pure second differences.
template <class F>
Mat<5> fd_hessian_of(F&& f, const Vec<5>& x) {
    const double eps4 = std::pow(2.22e-16, 0.25);
    Vec<5> h;
    for (int i = 0; i < 5; ++i) h[i] = eps4 * (1.0 + std::abs(x[i]));

    const auto at = [&](int i, double di, int j, double dj) {
        Vec<5> y = x;
        y[i] += di;
        y[j] += dj;
        return f(y);
    };

    Mat<5> H;
    const double f0 = f(x);
    for (int i = 0; i < 5; ++i) {
        H(i, i) = (at(i, h[i], i, 0.0) - 2.0 * f0 + at(i, -h[i], i, 0.0)) / (h[i] * h[i]);
        for (int j = i + 1; j < 5; ++j) {
            const double v = (at(i, h[i], j, h[j]) - at(i, h[i], j, -h[j]) -
                              at(i, -h[i], j, h[j]) + at(i, -h[i], j, -h[j])) /
                             (4.0 * h[i] * h[j]);
            H(i, j) = H(j, i) = v;
        }
    }
    return H;
}

} // namespace rotator
