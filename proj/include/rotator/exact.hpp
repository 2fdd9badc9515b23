#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rotator/chart.hpp"
#include "rotator/dynamics.hpp"
#include "rotator/minkowski.hpp"
#include "rotator/profiles.hpp"

namespace rotator {

/**
 * The arbitrary phase function of the closed-form solution: the angular
 * position of the null direction in the centre-of-momentum frame.
 * Admissible phases keep 0 < phi_dot < 2/ell everywhere.
 */
class PhaseProfile {
public:
    static PhaseProfile linear(double omega);
    static PhaseProfile modulated(double omega, double eps, double nu);

    double phi(double t) const;
    double phi_dot(double t) const;

    /// Lower/upper bounds of phi_dot over all t.
    double phi_dot_min() const;
    double phi_dot_max() const;

    /// Throws PhaseStall if the phase leaves (0, 2/ell) somewhere.
    void check_admissible(double ell) const;

    const std::string& name() const { return name_; }

private:
    PhaseProfile(double omega, double eps, double nu, std::string name)
        : omega_(omega), eps_(eps), nu_(nu), name_(std::move(name)) {}

    double omega_;
    double eps_;
    double nu_;
    std::string name_;
};

/// Kinematic data of a closed-form solution at one instant of
/// centre-of-momentum time.
struct ExactEval {
    FourVector x;
    FourVector xdot;
    FourVector k;
    FourVector kdot;
    double phi;
    double phi_dot;
};

/**
 * The closed-form free motion: position rides along P/m while the null
 * direction sweeps a great circle in the subspace orthogonal to P and S,
 * with an arbitrary admissible phase.
 */
class ExactSolution {
public:
    ExactSolution(SolutionFrame frame, PhaseProfile phase, FourVector x0 = {});

    const SolutionFrame& frame() const { return frame_; }
    const PhaseProfile& phase() const { return phase_; }
    const FourVector& n_perp() const { return n_perp_; }

    ExactEval eval(double t) const;

    /// Rotation axis vector at phase angle phi: n = N cos phi - Nperp sin phi.
    FourVector n_of_phi(double phi) const;

    /// Covariant curve in centre-of-momentum-time parametrization.
    CovariantCurve covariant_curve() const;

    /// Chart states parametrized by centre-of-momentum time (smooth, no
    /// inversion); pair with d(chart time)/dt = xdot^0/ell for residuals.
    ChartCurve com_state_curve() const;

    /// Chart curve in frame time (Newton-inverts x^0(t) = ell * t_chart).
    ChartCurve chart_curve() const;

    /// Centre-of-momentum time t at which x^0(t) = ell * t_chart.
    double com_time_of_chart_time(double t_chart) const;

private:
    SolutionFrame frame_;
    PhaseProfile phase_;
    FourVector x0_;
    FourVector n_perp_;
};

inline ExactEval exact_eval(const ExactSolution& sol, double t) { return sol.eval(t); }

/// phi_dot(t); always strictly below 2/ell for admissible phases.
double angular_speed(const ExactSolution& sol, double t);

/// (2/ell) tanh(psi) recovered from the evaluated four-velocity.
double angular_speed_from_kinematics(const ExactSolution& sol, double t);

/// S(T) - S(0) = -m T - (m l / 2)(phi(T) - phi(0)) for phi_dot > 0.
double action_along(const ExactSolution& sol, double T);

/// Composite-Simpson quadrature of the Lagrangian along the solution.
double action_quadrature(const RotatorProfile& profile, const ExactSolution& sol, double T,
                         int panels);

struct VerifyRow {
    double t;         // centre-of-momentum time
    double chart_rel; // -1 where the chart residual was pole-skipped
    double cov_rel;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    double max_chart_rel = 0.0;
    double max_cov_rel = 0.0;
    int n_chart = 0; // how many grid points the chart residual covered
    double max_rel() const { return max_chart_rel > max_cov_rel ? max_chart_rel : max_cov_rel; }
};

struct VerifyOptions {
    double pole_margin = 0.05; // min |sin theta| for the chart residual
    double v_max = 0.98;
    double fd_step = 1e-3;
    bool parallel = true;
};

/// Euler-Lagrange residuals (chart and covariant form) along the solution
/// on n_grid points of [t0, t1].
VerifyReport verify_exact(const RotatorProfile& profile, const ExactSolution& sol, double t0,
                          double t1, int n_grid, const VerifyOptions& opts = {});

struct IndeterminismRow {
    double t;
    double phi1;
    double phi2;
    double res1;
    double res2;
    double delta; // centre-of-momentum spatial separation
};

struct IndeterminismReport {
    double jet_mismatch = 0.0; // max component difference of (x,xdot,k,kdot) at t=0
    std::vector<IndeterminismRow> rows;
    double max_res1 = 0.0;
    double max_res2 = 0.0;
    double max_delta = 0.0;
};

/**
 * Two closed-form solutions sharing their full initial data (x, xdot, k,
 * kdot) at t = 0 yet diverging later. Throws JetMismatch if the phases do
 * not actually share the initial 1-jet.
 */
IndeterminismReport indeterminism_pair(const RotatorProfile& profile,
                                       const SolutionFrame& frame, const PhaseProfile& phase1,
                                       const PhaseProfile& phase2, double T, int n_grid,
                                       const VerifyOptions& opts = {});

} // namespace rotator
