#include "rotator/exact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rotator {

PhaseProfile PhaseProfile::linear(double omega) {
    std::ostringstream name;
    name << "linear(omega=" << omega << ")";
    return {omega, 0.0, 0.0, name.str()};
}

PhaseProfile PhaseProfile::modulated(double omega, double eps, double nu) {
    std::ostringstream name;
    name << "modulated(omega=" << omega << ",eps=" << eps << ",nu=" << nu << ")";
    return {omega, eps, nu, name.str()};
}

double PhaseProfile::phi(double t) const { return omega_ * t + eps_ * (1.0 - std::cos(nu_ * t)); }

double PhaseProfile::phi_dot(double t) const { return omega_ + eps_ * nu_ * std::sin(nu_ * t); }

double PhaseProfile::phi_dot_min() const { return omega_ - std::abs(eps_ * nu_); }

double PhaseProfile::phi_dot_max() const { return omega_ + std::abs(eps_ * nu_); }

void PhaseProfile::check_admissible(double ell) const {
    if (!(phi_dot_min() > 0.0)) {
        std::ostringstream msg;
        msg << name_ << ": phi_dot reaches " << phi_dot_min() << " <= 0";
        throw PhaseStall(msg.str());
    }
    if (!(phi_dot_max() < 2.0 / ell)) {
        std::ostringstream msg;
        msg << name_ << ": phi_dot reaches " << phi_dot_max() << " >= 2/ell = " << 2.0 / ell;
        throw PhaseStall(msg.str());
    }
}

ExactSolution::ExactSolution(SolutionFrame frame, PhaseProfile phase, FourVector x0)
    : frame_(std::move(frame)), phase_(std::move(phase)), x0_(x0) {
    phase_.check_admissible(frame_.ell);

    const double m = frame_.m;
    n_perp_ = epsilon_contract(frame_.N, frame_.S, frame_.P) * (2.0 / (m * m * m * frame_.ell));

    const double frame_err = frame_invariant_error(frame_);
    const double np_err =
        std::max({std::abs(minkowski_dot(n_perp_, n_perp_) + 1.0),
                  std::abs(minkowski_dot(n_perp_, frame_.N)),
                  std::abs(minkowski_dot(n_perp_, frame_.P)) / frame_.P.max_abs(),
                  std::abs(minkowski_dot(n_perp_, frame_.S)) / frame_.S.max_abs()});
    if (frame_err > 1e-10 || np_err > 1e-10)
        throw InvariantViolation("solution frame does not satisfy the closed-form conditions");
}

FourVector ExactSolution::n_of_phi(double phi) const {
    return frame_.N * std::cos(phi) - n_perp_ * std::sin(phi);
}

ExactEval ExactSolution::eval(double t) const {
    ExactEval e;
    e.phi = phase_.phi(t);
    e.phi_dot = phase_.phi_dot(t);
    if (!(e.phi_dot > 0.0)) throw PhaseStall("phi_dot <= 0 during evaluation");

    const double sphi = std::sin(e.phi), cphi = std::cos(e.phi);
    const FourVector r = frame_.N * sphi + n_perp_ * cphi;
    const FourVector n = frame_.N * cphi - n_perp_ * sphi;
    const FourVector P_over_m = frame_.P / frame_.m;
    const double half_ell = 0.5 * frame_.ell;

    e.x = P_over_m * t + half_ell * r + x0_;
    e.xdot = P_over_m + (half_ell * e.phi_dot) * n;
    e.k = P_over_m + n;
    e.kdot = (-e.phi_dot) * r;
    return e;
}

CovariantCurve ExactSolution::covariant_curve() const {
    return [*this](double t) {
        const ExactEval e = eval(t);
        return CovariantSample{e.xdot, e.k, e.kdot};
    };
}

ChartCurve ExactSolution::com_state_curve() const {
    return [*this](double t) {
        const ExactEval e = eval(t);
        return covariant_to_chart(e.xdot, e.k, e.kdot, frame_.ell);
    };
}

double ExactSolution::com_time_of_chart_time(double t_chart) const {
    const double target = frame_.ell * t_chart;
    const double p0m = frame_.P[0] / frame_.m;
    double t = (target - x0_[0]) / p0m;
    int polish = -1;
    for (int it = 0; it < 64 && polish != 0; ++it) {
        const ExactEval e = eval(t);
        const double g = e.x[0] - target;
        // two extra iterations past the tolerance settle the fixed point
        if (polish < 0 && std::abs(g) <= 1e-14 * std::max(1.0, std::abs(target))) polish = 2;
        if (polish > 0) --polish;
        t -= g / e.xdot[0];
    }
    return t;
}

ChartCurve ExactSolution::chart_curve() const {
    return [*this](double t_chart) {
        const ExactEval e = eval(com_time_of_chart_time(t_chart));
        return covariant_to_chart(e.xdot, e.k, e.kdot, frame_.ell);
    };
}

double angular_speed(const ExactSolution& sol, double t) { return sol.phase().phi_dot(t); }

double angular_speed_from_kinematics(const ExactSolution& sol, double t) {
    const ExactEval e = sol.eval(t);
    const double xx = minkowski_dot(e.xdot, e.xdot);
    // cosh(psi) = 1/sqrt(xdot.xdot) in this parametrization
    return 2.0 / sol.frame().ell * std::sqrt(std::max(0.0, 1.0 - xx));
}

double action_along(const ExactSolution& sol, double T) {
    const double m = sol.frame().m, ell = sol.frame().ell;
    return -m * T - 0.5 * m * ell * (sol.phase().phi(T) - sol.phase().phi(0.0));
}

double action_quadrature(const RotatorProfile& profile, const ExactSolution& sol, double T,
                         int panels) {
    const double m = sol.frame().m, ell = sol.frame().ell;
    const auto lagrangian = [&](double t) {
        const ExactEval e = sol.eval(t);
        const double kx = minkowski_dot(e.k, e.xdot);
        const double Q = -ell * ell * minkowski_dot(e.kdot, e.kdot) / (kx * kx);
        return -m * std::sqrt(minkowski_dot(e.xdot, e.xdot)) * profile.eval(Q).f;
    };
    // composite Simpson
    const double h = T / (2.0 * panels);
    double sum = lagrangian(0.0) + lagrangian(T);
    for (int i = 1; i < 2 * panels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * lagrangian(i * h);
    return sum * h / 3.0;
}

namespace {

struct PointResiduals {
    double chart_rel;
    double cov_rel;
};

PointResiduals residuals_at(const RotatorProfile& profile, const ExactSolution& sol,
                            const CovariantCurve& cov_curve, const ChartCurve& com_states,
                            double t, const VerifyOptions& opts) {
    PointResiduals out{-1.0, 0.0};
    const double m = sol.frame().m, ell = sol.frame().ell;
    out.cov_rel = el_residual_covariant(profile, cov_curve, t, m, ell, opts.fd_step).rel();

    const ChartState s = com_states(t);
    const double v2 = dot(s.V, s.V);
    if (std::abs(std::sin(s.theta)) >= opts.pole_margin && v2 <= opts.v_max * opts.v_max) {
        const double dtc_dt = sol.eval(t).xdot[0] / ell;
        out.chart_rel =
            el_residual_chart_param(profile, com_states, dtc_dt, t, opts.fd_step).rel();
    }
    return out;
}

} // namespace

VerifyReport verify_exact(const RotatorProfile& profile, const ExactSolution& sol, double t0,
                          double t1, int n_grid, const VerifyOptions& opts) {
    VerifyReport report;
    report.rows.resize(static_cast<std::size_t>(n_grid));
    const CovariantCurve cov_curve = sol.covariant_curve();
    const ChartCurve com_states = sol.com_state_curve();

    const auto eval_row = [&](int i) {
        const double t = n_grid == 1 ? t0 : t0 + (t1 - t0) * i / (n_grid - 1);
        const PointResiduals r = residuals_at(profile, sol, cov_curve, com_states, t, opts);
        report.rows[i] = {t, r.chart_rel, r.cov_rel};
    };

    if (opts.parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n_grid; ++i) eval_row(i);
    } else {
        for (int i = 0; i < n_grid; ++i) eval_row(i);
    }

    for (const VerifyRow& row : report.rows) {
        report.max_cov_rel = std::max(report.max_cov_rel, row.cov_rel);
        if (row.chart_rel >= 0.0) {
            report.max_chart_rel = std::max(report.max_chart_rel, row.chart_rel);
            ++report.n_chart;
        }
    }
    return report;
}

IndeterminismReport indeterminism_pair(const RotatorProfile& profile,
                                       const SolutionFrame& frame, const PhaseProfile& phase1,
                                       const PhaseProfile& phase2, double T, int n_grid,
                                       const VerifyOptions& opts) {
    const ExactSolution sol1(frame, phase1);
    const ExactSolution sol2(frame, phase2);

    IndeterminismReport report;
    const ExactEval e1 = sol1.eval(0.0), e2 = sol2.eval(0.0);
    double scale = 0.0, mismatch = 0.0;
    const FourVector* pairs[4][2] = {
        {&e1.x, &e2.x}, {&e1.xdot, &e2.xdot}, {&e1.k, &e2.k}, {&e1.kdot, &e2.kdot}};
    for (auto& pair : pairs) {
        mismatch = std::max(mismatch, (*pair[0] - *pair[1]).max_abs());
        scale = std::max({scale, pair[0]->max_abs(), pair[1]->max_abs()});
    }
    report.jet_mismatch = mismatch;
    if (mismatch > 1e-12 * scale) {
        std::ostringstream msg;
        msg << "initial data differ by " << mismatch << " (scale " << scale << ")";
        throw JetMismatch(msg.str());
    }

    const VerifyReport v1 = verify_exact(profile, sol1, 0.0, T, n_grid, opts);
    const VerifyReport v2 = verify_exact(profile, sol2, 0.0, T, n_grid, opts);

    report.rows.resize(static_cast<std::size_t>(n_grid));
    for (int i = 0; i < n_grid; ++i) {
        const double t = n_grid == 1 ? 0.0 : T * i / (n_grid - 1);
        IndeterminismRow row;
        row.t = t;
        row.phi1 = phase1.phi(t);
        row.phi2 = phase2.phi(t);
        row.res1 = std::max(v1.rows[i].cov_rel, v1.rows[i].chart_rel);
        row.res2 = std::max(v2.rows[i].cov_rel, v2.rows[i].chart_rel);
        // the position difference is orthogonal to P, so its invariant
        // length equals the spatial separation in the c.o.m. frame
        const FourVector dx = sol1.eval(t).x - sol2.eval(t).x;
        row.delta = std::sqrt(std::max(0.0, -minkowski_dot(dx, dx)));
        report.rows[i] = row;
        report.max_res1 = std::max(report.max_res1, row.res1);
        report.max_res2 = std::max(report.max_res2, row.res2);
        report.max_delta = std::max(report.max_delta, row.delta);
    }
    return report;
}

} // namespace rotator
