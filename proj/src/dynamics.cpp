#include "rotator/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rotator/dual2.hpp"

namespace rotator {

namespace {
constexpr double kDegeneracyThreshold = 1e-8;
}

CanonicalMomenta covariant_momenta(const RotatorProfile& profile, const FourVector& xdot,
                                   const FourVector& k, const FourVector& kdot, double m,
                                   double ell) {
    const double kx = minkowski_dot(k, xdot);
    const double kdkd = minkowski_dot(kdot, kdot);
    const double Q = -ell * ell * kdkd / (kx * kx);
    if (Q <= 0.0 && !profile.in_domain(Q))
        throw DegenerateRotation("Q = 0: momentum map undefined for profile " + profile.name());
    const ProfileDerivs d = profile.eval(Q);

    const double sxx = std::sqrt(minkowski_dot(xdot, xdot));
    const FourVector u = xdot / sxx;

    CanonicalMomenta out;
    out.p = m * d.f * u - (2.0 * m * Q * d.fp * sxx / kx) * k;
    out.pi = kdkd != 0.0 ? (2.0 * m * Q * d.fp * sxx / kdkd) * kdot : FourVector{};
    return out;
}

ChartDerivs chart_l_derivs(const RotatorProfile& profile, const ChartState& state) {
    state.validate();
    using D7 = Dual2<7>;
    // variables: theta, phi, theta_dot, phi_dot, V1, V2, V3
    const D7 theta = D7::variable(state.theta, 0);
    const D7 phi = D7::variable(state.phi_sph, 1);
    const D7 theta_dot = D7::variable(state.theta_dot, 2);
    const D7 phi_dot = D7::variable(state.phi_sph_dot, 3);
    const std::array<D7, 7> vars{theta, phi, theta_dot, phi_dot,
                                 D7::variable(state.V[0], 4), D7::variable(state.V[1], 5),
                                 D7::variable(state.V[2], 6)};
    const D7 L = lagrangian_full(profile, vars[0], vars[1], vars[2], vars[3],
                                 {vars[4], vars[5], vars[6]});

    ChartDerivs out;
    out.L = L.value();
    out.grad_q = {L.deriv(0), L.deriv(1)};
    for (int i = 0; i < 5; ++i) {
        out.grad_qdot[i] = L.deriv(i + 2);
        out.H_qdot_q(i, 0) = L.deriv2(i + 2, 0);
        out.H_qdot_q(i, 1) = L.deriv2(i + 2, 1);
        for (int j = 0; j < 5; ++j) out.H_qdot_qdot(i, j) = L.deriv2(i + 2, j + 2);
    }
    return out;
}

double ChartResidual::rel() const {
    double m = 0.0;
    for (double r : residual) m = std::max(m, std::abs(r));
    return m / scale;
}

namespace {

Vec<5> momentum_map(const RotatorProfile& profile, const ChartState& state) {
    return chart_l_derivs(profile, state).grad_qdot;
}

Vec<5> richardson_dgdt(const std::function<Vec<5>(double)>& g, double t, double h) {
    const auto central = [&](double step) {
        Vec<5> hi = g(t + step), lo = g(t - step), d{};
        for (int i = 0; i < 5; ++i) d[i] = (hi[i] - lo[i]) / (2.0 * step);
        return d;
    };
    const Vec<5> dh = central(h), dh2 = central(0.5 * h);
    Vec<5> out{};
    for (int i = 0; i < 5; ++i) out[i] = (4.0 * dh2[i] - dh[i]) / 3.0;
    return out;
}

} // namespace

ChartResidual el_residual_chart_param(const RotatorProfile& profile, const ChartCurve& curve,
                                      double dtc_dlambda, double lambda0, double h) {
    const Vec<5> dgdl = richardson_dgdt(
        [&](double s) { return momentum_map(profile, curve(s)); }, lambda0, h);

    const ChartDerivs center = chart_l_derivs(profile, curve(lambda0));
    ChartResidual res;
    for (std::size_t i = 0; i < 5; ++i) res.residual[i] = dgdl[i] / dtc_dlambda;
    res.residual[0] -= center.grad_q[0];
    res.residual[1] -= center.grad_q[1];
    // X components: dL/dX = 0, residual is pure momentum drift

    double gnorm = 0.0;
    for (double gi : center.grad_qdot) gnorm += gi * gi;
    res.scale = std::max(std::abs(center.L), std::sqrt(gnorm));
    return res;
}

ChartResidual el_residual_chart(const RotatorProfile& profile, const ChartCurve& curve,
                                double t, double h) {
    return el_residual_chart_param(profile, curve, 1.0, t, h);
}

CovariantResidual el_residual_covariant(const RotatorProfile& profile,
                                        const CovariantCurve& curve, double t, double m,
                                        double ell, double h) {
    const auto momenta_at = [&](double s) {
        const CovariantSample c = curve(s);
        return covariant_momenta(profile, c.xdot, c.k, c.kdot, m, ell);
    };

    const auto central4 = [&](const std::function<FourVector(double)>& f, double step) {
        const FourVector hi = f(t + step), lo = f(t - step);
        return (hi - lo) / (2.0 * step);
    };
    const auto richardson4 = [&](const std::function<FourVector(double)>& f) {
        const FourVector dh = central4(f, h), dh2 = central4(f, 0.5 * h);
        return (4.0 * dh2 - dh) / 3.0;
    };

    const FourVector pdot = richardson4([&](double s) { return momenta_at(s).p; });
    const FourVector pidot = richardson4([&](double s) { return momenta_at(s).pi; });

    const CovariantSample c = curve(t);
    const CanonicalMomenta pm = momenta_at(t);
    const double kx = minkowski_dot(c.k, c.xdot);
    const double Q = -ell * ell * minkowski_dot(c.kdot, c.kdot) / (kx * kx);
    const ProfileDerivs d = profile.eval(Q);
    const double sxx = std::sqrt(minkowski_dot(c.xdot, c.xdot));
    const FourVector dLdk = (2.0 * m * Q * d.fp * sxx / kx) * c.xdot;

    const double pk = minkowski_dot(pm.p, c.k);
    const double pk_scale = pm.p.max_abs() * c.k.max_abs();
    if (std::abs(pk) < 1e-10 * pk_scale)
        throw ProjectorSingular("p.k too small for the k-equation projector");

    const FourVector E = pidot + dLdk;

    CovariantResidual res;
    res.xres = pdot;
    res.kres = E - (minkowski_dot(E, pm.p) / pk) * c.k;

    const double pscale = std::max({momenta_at(t + h).p.max_abs(),
                                    momenta_at(t - h).p.max_abs(), pm.p.max_abs()});
    const double kscale = std::max({pm.pi.max_abs(), dLdk.max_abs(), pscale});
    res.xres_rel = pdot.max_abs() / pscale;
    res.kres_rel = res.kres.max_abs() / kscale;
    return res;
}

CovariantResidual el_residual_covariant(const RotatorProfile& profile, const ChartCurve& curve,
                                        double t, double m, double ell, double h) {
    const CovariantCurve lifted = [&curve, ell](double s) {
        const CovariantKinematics cov = chart_to_covariant(curve(s), ell);
        return CovariantSample{cov.xdot, cov.k, cov.kdot};
    };
    return el_residual_covariant(profile, lifted, t, m, ell, h);
}

Vec<5> accelerations(const RotatorProfile& profile, const ChartState& state) {
    const ChartDerivs d = chart_l_derivs(profile, state);

    const double ratio = singular_value_ratio(d.H_qdot_qdot);
    if (ratio < kDegeneracyThreshold) {
        std::ostringstream msg;
        msg << "velocity Hessian degenerate (sigma_min/sigma_max = " << ratio
            << ") for profile " << profile.name();
        throw DegenerateHessian(msg.str());
    }

    // Z = dL/dq - (d2L/dqdot dq) qdot; X coordinates are cyclic
    Vec<5> Z{d.grad_q[0], d.grad_q[1], 0.0, 0.0, 0.0};
    const Vec<2> qdot{state.theta_dot, state.phi_sph_dot};
    for (int i = 0; i < 5; ++i)
        Z[i] -= d.H_qdot_q(i, 0) * qdot[0] + d.H_qdot_q(i, 1) * qdot[1];

    Vec<5> qddot{};
    if (!lu_solve(d.H_qdot_qdot, Z, qddot))
        throw DegenerateHessian("velocity Hessian LU solve failed");
    return qddot;
}

namespace {

struct OdeState {
    ChartState s;
    Vec<3> X;
};

OdeState ode_step_rk4(const RotatorProfile& profile, const OdeState& y, double dt) {
    struct Deriv {
        double theta_dot, phi_dot;
        Vec<3> V;
        Vec<5> qddot;
    };
    const auto rhs = [&](const OdeState& z) {
        return Deriv{z.s.theta_dot, z.s.phi_sph_dot, z.s.V, accelerations(profile, z.s)};
    };
    const auto advance = [](const OdeState& z, const Deriv& d, double f) {
        OdeState out = z;
        out.s.theta += f * d.theta_dot;
        out.s.phi_sph += f * d.phi_dot;
        for (int i = 0; i < 3; ++i) out.X[i] += f * d.V[i];
        out.s.theta_dot += f * d.qddot[0];
        out.s.phi_sph_dot += f * d.qddot[1];
        for (int i = 0; i < 3; ++i) out.s.V[i] += f * d.qddot[2 + i];
        return out;
    };

    const Deriv k1 = rhs(y);
    const Deriv k2 = rhs(advance(y, k1, 0.5 * dt));
    const Deriv k3 = rhs(advance(y, k2, 0.5 * dt));
    const Deriv k4 = rhs(advance(y, k3, dt));

    OdeState out = y;
    const auto mix = [&](double a1, double a2, double a3, double a4) {
        return dt / 6.0 * (a1 + 2.0 * (a2 + a3) + a4);
    };
    out.s.theta += mix(k1.theta_dot, k2.theta_dot, k3.theta_dot, k4.theta_dot);
    out.s.phi_sph += mix(k1.phi_dot, k2.phi_dot, k3.phi_dot, k4.phi_dot);
    for (int i = 0; i < 3; ++i) out.X[i] += mix(k1.V[i], k2.V[i], k3.V[i], k4.V[i]);
    out.s.theta_dot += mix(k1.qddot[0], k2.qddot[0], k3.qddot[0], k4.qddot[0]);
    out.s.phi_sph_dot += mix(k1.qddot[1], k2.qddot[1], k3.qddot[1], k4.qddot[1]);
    for (int i = 0; i < 3; ++i)
        out.s.V[i] += mix(k1.qddot[2 + i], k2.qddot[2 + i], k3.qddot[2 + i], k4.qddot[2 + i]);
    return out;
}

TrajectorySample make_sample(const RotatorProfile& profile, const OdeState& y, double t,
                             double m, double ell) {
    TrajectorySample smp;
    smp.t = t;
    smp.state = y.s;
    smp.X = y.X;
    smp.Q = chart_Q(y.s);
    const CanonicalMomenta pm = canonical_momenta(profile, y.s, m, ell);
    const CovariantKinematics cov = chart_to_covariant(y.s, ell);
    const FourVector x{ell * t, ell * y.X[0], ell * y.X[1], ell * y.X[2]};
    smp.p = pm.p;
    smp.M = angular_momentum(x, pm.p, cov.k, pm.pi);
    smp.PP = minkowski_dot(pm.p, pm.p);
    const FourVector W = pauli_lubanski(smp.M, pm.p);
    smp.WW = minkowski_dot(W, W);
    return smp;
}

} // namespace

Trajectory integrate(const RotatorProfile& profile, const ChartState& initial, double T,
                     double dt, double m, double ell, const IntegrateOptions& opts) {
    if (!(T > 0.0) || !(dt > 0.0) || !(dt < T))
        throw ConfigError("integrate requires 0 < dt < T");

    Trajectory traj;
    traj.profile = profile.name();
    traj.m = m;
    traj.ell = ell;
    traj.dt = dt;

    OdeState y{initial, opts.X0};
    const long n_steps = std::lround(T / dt);
    const TrajectorySample first = make_sample(profile, y, 0.0, m, ell);
    traj.samples.push_back(first);

    const double p_scale = first.p.max_abs();
    const double M_scale = std::max(first.M.max_abs(), m * ell);
    const double Q_scale = std::max(std::abs(first.Q), 1e-30);

    for (long step = 1; step <= n_steps; ++step) {
        const double t = step * dt;
        try {
            y = ode_step_rk4(profile, y, dt);
            y.s.validate();
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << e.what() << " at t = " << t;
            if (dynamic_cast<const DegenerateHessian*>(&e)) throw DegenerateHessian(msg.str());
            throw InvariantViolation(msg.str());
        }

        const TrajectorySample smp = make_sample(profile, y, t, m, ell);
        for (int i = 0; i < 4; ++i)
            traj.max_p_drift =
                std::max(traj.max_p_drift, std::abs(smp.p[i] - first.p[i]) / p_scale);
        traj.max_M_drift = std::max(traj.max_M_drift, (smp.M - first.M).max_abs() / M_scale);
        traj.max_Q_drift = std::max(traj.max_Q_drift, std::abs(smp.Q - first.Q) / Q_scale);

        if (step % opts.sample_stride == 0 || step == n_steps) traj.samples.push_back(smp);
    }
    return traj;
}

ChartCurve trajectory_curve(const Trajectory& traj, const RotatorProfile& profile) {
    if (traj.samples.empty()) throw ConfigError("empty trajectory");
    // local re-integration from the nearest stored sample keeps stencil
    // evaluations independent of the output grid
    return [&traj, profile](double t) {
        const auto& samples = traj.samples;
        std::size_t lo = 0, hi = samples.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (samples[mid].t <= t ? lo : hi) = mid;
        }
        const std::size_t nearest =
            std::abs(samples[lo].t - t) <= std::abs(samples[hi].t - t) ? lo : hi;
        OdeState y{samples[nearest].state, samples[nearest].X};
        const double span = t - samples[nearest].t;
        if (span != 0.0) {
            const int substeps = 4;
            const double h = span / substeps;
            for (int i = 0; i < substeps; ++i) y = ode_step_rk4(profile, y, h);
        }
        return y.s;
    };
}

} // namespace rotator
