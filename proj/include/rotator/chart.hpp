#pragma once

#include <cmath>

#include "rotator/dual2.hpp"
#include "rotator/errors.hpp"
#include "rotator/linalg.hpp"
#include "rotator/minkowski.hpp"
#include "rotator/profiles.hpp"
#include "rotator/rng.hpp"

namespace rotator {

/**
 * The 5-degree-of-freedom state of the adapted chart: Cartesian velocity
 * of the position (x = l X, x0 = l t), spherical angles of the null
 * direction (k0 = 1), and their chart-time derivatives. Positions X are
 * cyclic and live in Trajectory, not here.
 */
struct ChartState {
    double theta = M_PI / 2;
    double phi_sph = 0.0;
    Vec<3> V{};
    double theta_dot = 0.0;
    double phi_sph_dot = 0.0;

    /// Unit direction of the null vector.
    Vec<3> n_vector() const {
        const double st = std::sin(theta);
        return {st * std::cos(phi_sph), st * std::sin(phi_sph), std::cos(theta)};
    }

    /// Angular-velocity components (theta_dot, phi_dot sin theta).
    Vec<2> w_vector() const { return {theta_dot, phi_sph_dot * std::sin(theta)}; }

    /// Throws InvariantViolation on superluminal V or pole approach.
    void validate() const;
};

/// Chart kinematics lifted to four-vectors, per unit chart time.
struct CovariantKinematics {
    FourVector xdot; // xdot[0] = l by the gauge x0 = l t
    FourVector k;    // k[0] = 1, null by construction
    FourVector kdot;
};

/// Q = w.w / (1 - N.V)^2; equals -l^2 (kdot.kdot)/(k.xdot)^2 covariantly.
double chart_Q(const ChartState& state);

/// Reduced Lagrangian density  sqrt(1 - V.V) f(Q).
double chart_lagrangian(const RotatorProfile& profile, const ChartState& state);

CovariantKinematics chart_to_covariant(const ChartState& state, double ell = 1.0);

/**
 * Inverse chart map from four-vector data in an arbitrary parametrization.
 * k is rescaled to k0 = 1 (a null direction, not a vector, is the state).
 * Throws InvariantViolation near the chart poles.
 */
ChartState covariant_to_chart(const FourVector& xdot, const FourVector& k,
                              const FourVector& kdot, double ell = 1.0);

/// Momenta conjugate to x and k. Throws DegenerateRotation when Q = 0 is
/// outside the profile domain (the fundamental family).
struct CanonicalMomenta {
    FourVector p;
    FourVector pi;
};
CanonicalMomenta canonical_momenta(const RotatorProfile& profile, const ChartState& state,
                                   double m, double ell);

/// M = x (wedge) p + k (wedge) pi.
inline AngularMomentum angular_momentum(const FourVector& x, const FourVector& p,
                                        const FourVector& k, const FourVector& pi) {
    return AngularMomentum::from_pairs(x, p, k, pi);
}

/// Hyperbolic angle between momentum and world velocity, exp(2 psi) = 1 + sqrt(Q).
inline double psi_of_Q(double Q) { return 0.5 * std::log1p(std::sqrt(Q)); }

/**
 * Random chart state with Q guaranteed inside the profile domain:
 * |V| <= 0.9, |cos theta| <= 0.95, |w| <= 2, Q log-uniform.
 */
ChartState sample_state(const RotatorProfile& profile, SplitRng& rng);

// ---------------------------------------------------------------------
// Generic Lagrangian evaluators. T is double or Dual2<N>; the profile
// enters through its analytic (f, f', f'') triple chained at Q.
// ---------------------------------------------------------------------

template <int N>
inline Dual2<N> profile_chain(const RotatorProfile& profile, const Dual2<N>& Q) {
    const ProfileDerivs d = profile.eval(Q.value());
    return Q.unary(d.f, d.fp, d.fpp);
}

inline double profile_chain(const RotatorProfile& profile, double Q) {
    return profile.eval(Q).f;
}

/// L as a function of (w1, w2, V) with the null direction held fixed.
template <class T>
T lagrangian_wv(const RotatorProfile& profile, const T& w1, const T& w2,
                const std::array<T, 3>& V, const Vec<3>& n_fixed) {
    using std::sqrt;
    const T denom = 1.0 - (n_fixed[0] * V[0] + n_fixed[1] * V[1] + n_fixed[2] * V[2]);
    const T Q = (w1 * w1 + w2 * w2) / (denom * denom);
    const T v2 = V[0] * V[0] + V[1] * V[1] + V[2] * V[2];
    return sqrt(1.0 - v2) * profile_chain(profile, Q);
}

/// L as a function of the raw chart coordinates and velocities.
template <class T>
T lagrangian_full(const RotatorProfile& profile, const T& theta, const T& phi,
                  const T& theta_dot, const T& phi_dot, const std::array<T, 3>& V) {
    using std::cos;
    using std::sin;
    using std::sqrt;
    const T st = sin(theta), ct = cos(theta);
    const T sp = sin(phi), cp = cos(phi);
    const T ndotv = st * cp * V[0] + st * sp * V[1] + ct * V[2];
    const T denom = 1.0 - ndotv;
    const T w2c = phi_dot * st;
    const T Q = (theta_dot * theta_dot + w2c * w2c) / (denom * denom);
    const T v2 = V[0] * V[0] + V[1] * V[1] + V[2] * V[2];
    return sqrt(1.0 - v2) * profile_chain(profile, Q);
}

} // namespace rotator
