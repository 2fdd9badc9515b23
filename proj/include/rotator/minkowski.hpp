#pragma once

#include <array>
#include <cstdint>

namespace rotator {

/**
 * Contravariant four-vector, signature (+,-,-,-), time component first.
 * Units are context dependent (length for positions, mass for momenta).
 */
struct FourVector {
    std::array<double, 4> c{};

    FourVector() = default;
    FourVector(double t, double x, double y, double z) : c{t, x, y, z} {}

    double& operator[](int i) { return c[i]; }
    double operator[](int i) const { return c[i]; }

    FourVector& operator+=(const FourVector& o) {
        for (int i = 0; i < 4; ++i) c[i] += o.c[i];
        return *this;
    }
    FourVector& operator-=(const FourVector& o) {
        for (int i = 0; i < 4; ++i) c[i] -= o.c[i];
        return *this;
    }
    FourVector& operator*=(double s) {
        for (double& x : c) x *= s;
        return *this;
    }
    friend FourVector operator+(FourVector l, const FourVector& r) { return l += r; }
    friend FourVector operator-(FourVector l, const FourVector& r) { return l -= r; }
    friend FourVector operator*(FourVector l, double s) { return l *= s; }
    friend FourVector operator*(double s, FourVector r) { return r *= s; }
    friend FourVector operator/(FourVector l, double s) { return l *= 1.0 / s; }

    double max_abs() const;
};

/// a.b = a0 b0 - a1 b1 - a2 b2 - a3 b3.
double minkowski_dot(const FourVector& a, const FourVector& b);

/// Covariant components: lowering flips the sign of the spatial part.
FourVector lower(const FourVector& a);

bool is_timelike(const FourVector& v, double tol = 1e-12);
bool is_null(const FourVector& v, double tol = 1e-12);
bool is_spacelike(const FourVector& v, double tol = 1e-12);

/**
 * v^mu = eps^{mu nu alpha beta} a_nu b_alpha c_beta with eps^{0123} = +1
 * and indices lowered by the metric. Totally antisymmetric in (a,b,c) and
 * Minkowski-orthogonal to each argument.
 */
FourVector epsilon_contract(const FourVector& a, const FourVector& b, const FourVector& c);

/**
 * Antisymmetric angular-momentum tensor M_{mu nu} (lower indices),
 * stored as the six independent entries.
 */
class AngularMomentum {
public:
    AngularMomentum() = default;

    /// M = x (wedge) p + k (wedge) pi, all arguments contravariant.
    static AngularMomentum from_pairs(const FourVector& x, const FourVector& p,
                                      const FourVector& k, const FourVector& pi);

    double operator()(int mu, int nu) const;
    void set(int mu, int nu, double value);

    AngularMomentum& operator-=(const AngularMomentum& o) {
        for (int i = 0; i < 6; ++i) m_[i] -= o.m_[i];
        return *this;
    }
    friend AngularMomentum operator-(AngularMomentum l, const AngularMomentum& r) {
        return l -= r;
    }

    double max_abs() const;

private:
    // order: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
    std::array<double, 6> m_{};
};

/// Pauli-Lubanski vector W^mu = -1/2 eps^{mu alpha beta gamma} M_{alpha beta} P_gamma.
FourVector pauli_lubanski(const AngularMomentum& M, const FourVector& P);

/// Active boost with rapidity vector zeta; |zeta| is the rapidity.
FourVector lorentz_boost(const FourVector& v, const std::array<double, 3>& rapidity);

/// Spatial rotation by a 3x3 row-major matrix, time component untouched.
FourVector spatial_rotation(const FourVector& v, const double R[3][3]);

/**
 * The constant vectors of a closed-form free-motion solution:
 * momentum P (P.P = m^2), spin S (S.S = -1/4 m^4 l^2, S.P = 0) and a unit
 * spacelike axis N orthogonal to both.
 */
struct SolutionFrame {
    FourVector P;
    FourVector S;
    FourVector N;
    double m = 1.0;
    double ell = 1.0;
};

/// Canonical rest-frame triple: P = (m,0,0,0), S = (0,0,0, m^2 l/2), N = (0,1,0,0).
SolutionFrame rest_frame(double m, double ell);

/**
 * Rest-frame triple pushed through a seeded random rotation and boost
 * (rapidity in [0,2]). Seed 0 reproduces the rest frame exactly.
 */
SolutionFrame build_solution_frame(double m, double ell, std::uint64_t seed);

/// Max relative violation of the six frame conditions, for diagnostics.
double frame_invariant_error(const SolutionFrame& f);

} // namespace rotator
