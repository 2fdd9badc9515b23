#include "rotator/minkowski.hpp"

#include <cmath>

#include "rotator/rng.hpp"

namespace rotator {

double FourVector::max_abs() const {
    double m = 0.0;
    for (double x : c) m = std::max(m, std::abs(x));
    return m;
}

double minkowski_dot(const FourVector& a, const FourVector& b) {
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

FourVector lower(const FourVector& a) { return {a[0], -a[1], -a[2], -a[3]}; }

bool is_timelike(const FourVector& v, double tol) { return minkowski_dot(v, v) > tol; }
bool is_null(const FourVector& v, double tol) { return std::abs(minkowski_dot(v, v)) <= tol; }
bool is_spacelike(const FourVector& v, double tol) { return minkowski_dot(v, v) < -tol; }

namespace {

// Permutations of (0,1,2,3) with their Levi-Civita signs.
struct Perm4 {
    int p[4];
    int sign;
};

const Perm4* permutation_table() {
    static Perm4 table[24];
    static bool built = false;
    if (!built) {
        int idx = 0;
        int digits[4];
        for (digits[0] = 0; digits[0] < 4; ++digits[0])
            for (digits[1] = 0; digits[1] < 4; ++digits[1])
                for (digits[2] = 0; digits[2] < 4; ++digits[2])
                    for (digits[3] = 0; digits[3] < 4; ++digits[3]) {
                        bool distinct = true;
                        for (int i = 0; i < 4 && distinct; ++i)
                            for (int j = i + 1; j < 4; ++j)
                                if (digits[i] == digits[j]) { distinct = false; break; }
                        if (!distinct) continue;
                        int inversions = 0;
                        for (int i = 0; i < 4; ++i)
                            for (int j = i + 1; j < 4; ++j)
                                if (digits[i] > digits[j]) ++inversions;
                        Perm4& e = table[idx++];
                        for (int i = 0; i < 4; ++i) e.p[i] = digits[i];
                        e.sign = (inversions % 2 == 0) ? 1 : -1;
                    }
        built = true;
    }
    return table;
}

} // namespace

FourVector epsilon_contract(const FourVector& a, const FourVector& b, const FourVector& c) {
    const FourVector al = lower(a), bl = lower(b), cl = lower(c);
    FourVector out;
    const Perm4* perms = permutation_table();
    for (int t = 0; t < 24; ++t) {
        const Perm4& e = perms[t];
        out[e.p[0]] += e.sign * al[e.p[1]] * bl[e.p[2]] * cl[e.p[3]];
    }
    return out;
}

AngularMomentum AngularMomentum::from_pairs(const FourVector& x, const FourVector& p,
                                            const FourVector& k, const FourVector& pi) {
    const FourVector xl = lower(x), pl = lower(p), kl = lower(k), pil = lower(pi);
    AngularMomentum M;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu)
            M.set(mu, nu, xl[mu] * pl[nu] - xl[nu] * pl[mu] + kl[mu] * pil[nu] - kl[nu] * pil[mu]);
    return M;
}

namespace {
inline int pair_index(int mu, int nu) {
    // (0,1)->0 (0,2)->1 (0,3)->2 (1,2)->3 (1,3)->4 (2,3)->5
    static const int lut[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return lut[mu][nu];
}
} // namespace

double AngularMomentum::operator()(int mu, int nu) const {
    if (mu == nu) return 0.0;
    const double v = m_[pair_index(mu, nu)];
    return mu < nu ? v : -v;
}

void AngularMomentum::set(int mu, int nu, double value) {
    if (mu == nu) return;
    m_[pair_index(mu, nu)] = mu < nu ? value : -value;
}

double AngularMomentum::max_abs() const {
    double m = 0.0;
    for (double x : m_) m = std::max(m, std::abs(x));
    return m;
}

FourVector pauli_lubanski(const AngularMomentum& M, const FourVector& P) {
    const FourVector Pl = lower(P);
    FourVector W;
    const Perm4* perms = permutation_table();
    for (int t = 0; t < 24; ++t) {
        const Perm4& e = perms[t];
        W[e.p[0]] += -0.5 * e.sign * M(e.p[1], e.p[2]) * Pl[e.p[3]];
    }
    return W;
}

FourVector lorentz_boost(const FourVector& v, const std::array<double, 3>& rapidity) {
    const double chi =
        std::sqrt(rapidity[0] * rapidity[0] + rapidity[1] * rapidity[1] + rapidity[2] * rapidity[2]);
    if (chi == 0.0) return v;
    const double nx = rapidity[0] / chi, ny = rapidity[1] / chi, nz = rapidity[2] / chi;
    const double ch = std::cosh(chi), sh = std::sinh(chi);
    const double ndotx = nx * v[1] + ny * v[2] + nz * v[3];
    FourVector out = v;
    out[0] = ch * v[0] + sh * ndotx;
    const double coef = (ch - 1.0) * ndotx + sh * v[0];
    out[1] = v[1] + coef * nx;
    out[2] = v[2] + coef * ny;
    out[3] = v[3] + coef * nz;
    return out;
}

FourVector spatial_rotation(const FourVector& v, const double R[3][3]) {
    FourVector out;
    out[0] = v[0];
    for (int i = 0; i < 3; ++i)
        out[i + 1] = R[i][0] * v[1] + R[i][1] * v[2] + R[i][2] * v[3];
    return out;
}

SolutionFrame rest_frame(double m, double ell) {
    SolutionFrame f;
    f.m = m;
    f.ell = ell;
    f.P = {m, 0.0, 0.0, 0.0};
    f.S = {0.0, 0.0, 0.0, 0.5 * m * m * ell};
    f.N = {0.0, 1.0, 0.0, 0.0};
    return f;
}

SolutionFrame build_solution_frame(double m, double ell, std::uint64_t seed) {
    SolutionFrame f = rest_frame(m, ell);
    if (seed == 0) return f;
    SplitRng rng(seed);
    double R[3][3];
    rng.rotation(R);
    const double chi = rng.uniform(0.0, 2.0);
    double bx, by, bz;
    rng.sphere(bx, by, bz);
    const std::array<double, 3> zeta{chi * bx, chi * by, chi * bz};
    f.P = lorentz_boost(spatial_rotation(f.P, R), zeta);
    f.S = lorentz_boost(spatial_rotation(f.S, R), zeta);
    f.N = lorentz_boost(spatial_rotation(f.N, R), zeta);
    return f;
}

double frame_invariant_error(const SolutionFrame& f) {
    const double m2 = f.m * f.m;
    const double s2 = 0.25 * m2 * m2 * f.ell * f.ell;
    double err = std::abs(minkowski_dot(f.P, f.P) - m2) / m2;
    err = std::max(err, std::abs(minkowski_dot(f.S, f.S) + s2) / s2);
    err = std::max(err, std::abs(minkowski_dot(f.N, f.N) + 1.0));
    const double pscale = f.P.max_abs(), sscale = f.S.max_abs(), nscale = f.N.max_abs();
    err = std::max(err, std::abs(minkowski_dot(f.S, f.P)) / (sscale * pscale));
    err = std::max(err, std::abs(minkowski_dot(f.N, f.S)) / (nscale * sscale));
    err = std::max(err, std::abs(minkowski_dot(f.N, f.P)) / (nscale * pscale));
    return err;
}

} // namespace rotator
