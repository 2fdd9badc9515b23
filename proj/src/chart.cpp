#include "rotator/chart.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rotator {

namespace {
constexpr double kPoleMargin = 1e-6;
}

void ChartState::validate() const {
    const double v2 = dot(V, V);
    if (!(v2 < 1.0)) {
        std::ostringstream msg;
        msg << "superluminal chart velocity, V.V = " << v2;
        throw InvariantViolation(msg.str());
    }
    if (std::abs(std::sin(theta)) < kPoleMargin)
        throw InvariantViolation("chart pole approach, |sin theta| < 1e-6");
    const double denom = 1.0 - dot(n_vector(), V);
    if (!(denom > 0.0)) throw InvariantViolation("1 - N.V <= 0");
}

double chart_Q(const ChartState& state) {
    state.validate();
    const Vec<2> w = state.w_vector();
    const double denom = 1.0 - dot(state.n_vector(), state.V);
    return (w[0] * w[0] + w[1] * w[1]) / (denom * denom);
}

double chart_lagrangian(const RotatorProfile& profile, const ChartState& state) {
    state.validate();
    const double f = profile.eval(chart_Q(state)).f;
    return std::sqrt(1.0 - dot(state.V, state.V)) * f;
}

CovariantKinematics chart_to_covariant(const ChartState& state, double ell) {
    state.validate();
    const Vec<3> n = state.n_vector();
    const double st = std::sin(state.theta), ct = std::cos(state.theta);
    const double sp = std::sin(state.phi_sph), cp = std::cos(state.phi_sph);
    // ndot = theta_dot e_theta + phi_dot sin(theta) e_phi
    const Vec<3> e_theta{ct * cp, ct * sp, -st};
    const Vec<3> e_phi{-sp, cp, 0.0};
    const double wphi = state.phi_sph_dot * st;
    CovariantKinematics cov;
    cov.xdot = {ell, ell * state.V[0], ell * state.V[1], ell * state.V[2]};
    cov.k = {1.0, n[0], n[1], n[2]};
    cov.kdot = {0.0, state.theta_dot * e_theta[0] + wphi * e_phi[0],
                state.theta_dot * e_theta[1] + wphi * e_phi[1],
                state.theta_dot * e_theta[2] + wphi * e_phi[2]};
    return cov;
}

ChartState covariant_to_chart(const FourVector& xdot, const FourVector& k,
                              const FourVector& kdot, double ell) {
    if (!(xdot[0] > 0.0)) throw InvariantViolation("xdot has nonpositive time component");
    if (!(k[0] > 0.0)) throw InvariantViolation("null direction with nonpositive k0");

    ChartState s;
    for (int i = 0; i < 3; ++i) s.V[i] = xdot[i + 1] / xdot[0];

    const Vec<3> n{k[1] / k[0], k[2] / k[0], k[3] / k[0]};
    const double st2 = n[0] * n[0] + n[1] * n[1];
    const double st = std::sqrt(st2);
    if (st < kPoleMargin) throw InvariantViolation("null direction at a chart pole");
    s.theta = std::atan2(st, n[2]);
    s.phi_sph = std::atan2(n[1], n[0]);

    // d(n)/d(chart time); the k0 = 1 gauge removes the radial part.
    const double dt_chart = xdot[0] / ell;
    Vec<3> ndot;
    for (int i = 0; i < 3; ++i)
        ndot[i] = (kdot[i + 1] * k[0] - k[i + 1] * kdot[0]) / (k[0] * k[0] * dt_chart);

    const double ct = n[2];
    const double cp = n[0] / st, sp = n[1] / st;
    const Vec<3> e_theta{ct * cp, ct * sp, -st};
    const Vec<3> e_phi{-sp, cp, 0.0};
    s.theta_dot = dot(ndot, e_theta);
    s.phi_sph_dot = dot(ndot, e_phi) / st;
    return s;
}

CanonicalMomenta canonical_momenta(const RotatorProfile& profile, const ChartState& state,
                                   double m, double ell) {
    state.validate();
    const double Q = chart_Q(state);
    if (Q == 0.0 && !profile.in_domain(0.0))
        throw DegenerateRotation("Q = 0: momentum map undefined for profile " + profile.name());
    const ProfileDerivs d = profile.eval(Q);
    const CovariantKinematics cov = chart_to_covariant(state, ell);

    const double xx = minkowski_dot(cov.xdot, cov.xdot);
    const double sxx = std::sqrt(xx);
    const double kx = minkowski_dot(cov.k, cov.xdot);
    const FourVector u = cov.xdot / sxx;

    CanonicalMomenta out;
    out.p = m * d.f * u - (2.0 * m * Q * d.fp * sxx / kx) * cov.k;
    const double kdkd = minkowski_dot(cov.kdot, cov.kdot); // = -w.w
    if (Q == 0.0) {
        out.pi = FourVector{};
    } else {
        out.pi = (2.0 * m * Q * d.fp * sxx / kdkd) * cov.kdot;
    }
    return out;
}

ChartState sample_state(const RotatorProfile& profile, SplitRng& rng) {
    ChartState s;
    // velocity uniform in the |V| <= 0.9 ball
    double nx, ny, nz;
    rng.sphere(nx, ny, nz);
    const double vmag = 0.9 * std::cbrt(rng.uniform());
    s.V = {vmag * nx, vmag * ny, vmag * nz};

    s.theta = std::acos(rng.uniform(-0.95, 0.95));
    s.phi_sph = rng.uniform(0.0, 2.0 * M_PI);

    const double denom = 1.0 - dot(s.n_vector(), s.V);
    // Q log-uniform within the profile domain, |w| capped at 2
    const double cap = std::pow(2.0 / denom, 2);
    const double q_hi = std::min({cap, 0.9 * profile.domain_hi(), 5.0});
    const double q_lo = std::max(0.02, profile.domain_lo() * 1.05);
    const double Q = q_lo * std::exp(rng.uniform() * std::log(q_hi / q_lo));

    const double wmag = std::sqrt(Q) * denom;
    const double alpha = rng.uniform(0.0, 2.0 * M_PI);
    s.theta_dot = wmag * std::cos(alpha);
    const double st = std::sin(s.theta);
    s.phi_sph_dot = wmag * std::sin(alpha) / st;
    return s;
}

} // namespace rotator
