// Benchmark of the OpenMP scan kernels against their serial references.
// Also asserts the two paths produce identical rows.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rotator/exact.hpp"
#include "rotator/hessian.hpp"
#include "rotator/minkowski.hpp"
#include "rotator/profiles.hpp"

namespace {

using namespace rotator;

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

bool rows_equal(const ScanReport& a, const ScanReport& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const ScanRow &ra = a.rows[i], &rb = b.rows[i];
        if (ra.Q != rb.Q || ra.det_closed != rb.det_closed ||
            ra.det_numeric != rb.det_numeric || ra.sigma_ratio != rb.sigma_ratio)
            return false;
    }
    return true;
}

void bench_degeneracy_scan(const RotatorProfile& profile, int n_states) {
    const double t0 = now_ms();
    const ScanReport serial = degeneracy_scan_serial(profile, n_states, 7);
    const double t1 = now_ms();
    const ScanReport parallel = degeneracy_scan_parallel(profile, n_states, 7);
    const double t2 = now_ms();

    std::printf("degeneracy_scan  %-14s n=%-6d serial %8.1f ms  parallel %8.1f ms  "
                "speedup %5.2fx  rows %s\n",
                profile.name().c_str(), n_states, t1 - t0, t2 - t1,
                (t1 - t0) / std::max(1e-9, t2 - t1),
                rows_equal(serial, parallel) ? "identical" : "DIFFER");
}

void bench_verify(int n_grid) {
    const RotatorProfile fundamental = RotatorProfile::fundamental();
    const ExactSolution sol(build_solution_frame(1.0, 1.0, 11),
                            PhaseProfile::modulated(1.0, 0.3, 2.0));
    VerifyOptions opts;

    opts.parallel = false;
    const double t0 = now_ms();
    const VerifyReport serial = verify_exact(fundamental, sol, 0.0, 10.0, n_grid, opts);
    const double t1 = now_ms();
    opts.parallel = true;
    const VerifyReport parallel = verify_exact(fundamental, sol, 0.0, 10.0, n_grid, opts);
    const double t2 = now_ms();

    bool identical = serial.rows.size() == parallel.rows.size();
    for (std::size_t i = 0; identical && i < serial.rows.size(); ++i)
        identical = serial.rows[i].chart_rel == parallel.rows[i].chart_rel &&
                    serial.rows[i].cov_rel == parallel.rows[i].cov_rel;

    std::printf("verify_exact     %-14s n=%-6d serial %8.1f ms  parallel %8.1f ms  "
                "speedup %5.2fx  rows %s\n",
                "fundamental", n_grid, t1 - t0, t2 - t1,
                (t1 - t0) / std::max(1e-9, t2 - t1), identical ? "identical" : "DIFFER");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel kernels run serially\n");
#endif
    bench_degeneracy_scan(RotatorProfile::fundamental(), 2000);
    bench_degeneracy_scan(RotatorProfile::deformed(1e-2), 2000);
    bench_verify(400);
    return 0;
}
