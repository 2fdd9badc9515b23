#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rotator/chart.hpp"
#include "rotator/linalg.hpp"
#include "rotator/minkowski.hpp"
#include "rotator/profiles.hpp"

namespace rotator {

/// A smooth curve of chart states parametrized by chart time.
using ChartCurve = std::function<ChartState(double)>;

/// Four-vector kinematic data of a curve in an arbitrary parametrization.
struct CovariantSample {
    FourVector xdot;
    FourVector k;
    FourVector kdot;
};
using CovariantCurve = std::function<CovariantSample(double)>;

/// Momenta from raw covariant data (any parametrization).
CanonicalMomenta covariant_momenta(const RotatorProfile& profile, const FourVector& xdot,
                                   const FourVector& k, const FourVector& kdot, double m,
                                   double ell);

/// Value, gradient and second derivatives of L at a state, with respect
/// to (theta, phi) and the raw velocities (theta_dot, phi_dot, V).
struct ChartDerivs {
    double L;
    Vec<2> grad_q;        // dL/d(theta, phi)
    Vec<5> grad_qdot;     // dL/d(theta_dot, phi_dot, V)
    Mat<5> H_qdot_qdot;   // velocity Hessian (raw variables)
    Mat<5, 2> H_qdot_q;   // mixed block
};
ChartDerivs chart_l_derivs(const RotatorProfile& profile, const ChartState& state);

struct ChartResidual {
    Vec<5> residual; // d/dt(dL/dqdot) - dL/dq, ordered (theta, phi, X)
    double scale;    // max(|L|, |dL/dqdot|) at the evaluation point
    double rel() const;
};

/**
 * Euler-Lagrange residual along a curve. The time derivative of the
 * momentum map uses two-step Richardson central differences with step h;
 * state derivatives come from the dual-number engine.
 */
ChartResidual el_residual_chart(const RotatorProfile& profile, const ChartCurve& curve,
                                double t, double h = 1e-3);

/**
 * Same residual for a state curve given in an arbitrary smooth
 * parametrization lambda; dtc_dlambda is d(chart time)/d(lambda) at
 * lambda0. Lets closed-form solutions keep their own time variable, so no
 * numerical inversion enters the difference stencil.
 */
ChartResidual el_residual_chart_param(const RotatorProfile& profile, const ChartCurve& curve,
                                      double dtc_dlambda, double lambda0, double h = 1e-3);

struct CovariantResidual {
    FourVector xres; // pdot
    FourVector kres; // projected pidot + dL/dk
    double xres_rel;
    double kres_rel;
    double rel() const { return xres_rel > kres_rel ? xres_rel : kres_rel; }
};

/**
 * Covariant equations of motion: xres = d/dt p, and the k equation with
 * the multiplier eliminated by the p-projector. Throws ProjectorSingular
 * if p.k is too small for the projector.
 */
CovariantResidual el_residual_covariant(const RotatorProfile& profile,
                                        const CovariantCurve& curve, double t, double m,
                                        double ell, double h = 1e-3);

/// Chart-curve convenience overload (lifts through the chart map).
CovariantResidual el_residual_covariant(const RotatorProfile& profile, const ChartCurve& curve,
                                        double t, double m, double ell, double h = 1e-3);

/**
 * Solve H qddot = Z for the accelerations (theta, phi, V). Throws
 * DegenerateHessian when sigma_min/sigma_max < 1e-8 - for the fundamental
 * rotator this happens at every state.
 */
Vec<5> accelerations(const RotatorProfile& profile, const ChartState& state);

struct TrajectorySample {
    double t; // chart time, units of ell
    ChartState state;
    Vec<3> X; // position in units of ell
    double Q;
    FourVector p;
    AngularMomentum M;
    double PP;
    double WW;
};

struct Trajectory {
    std::string profile;
    double m = 1.0;
    double ell = 1.0;
    double dt = 0.0;
    std::vector<TrajectorySample> samples;
    // worst relative drifts over every integration step, not just samples
    double max_p_drift = 0.0;
    double max_M_drift = 0.0;
    double max_Q_drift = 0.0;
};

struct IntegrateOptions {
    int sample_stride = 1; // store every n-th step
    Vec<3> X0{};           // initial position
};

/**
 * Fixed-step RK4 over the canonical form ydot = F(y) with a conservation
 * audit of p, M and Q at every step. Halts with DegenerateHessian or
 * InvariantViolation (annotated with the failure time) mid-run.
 */
Trajectory integrate(const RotatorProfile& profile, const ChartState& initial, double T,
                     double dt, double m = 1.0, double ell = 1.0,
                     const IntegrateOptions& opts = {});

/// Curve that locally re-integrates from the nearest stored sample, so
/// residual stencils are not limited by the output grid.
ChartCurve trajectory_curve(const Trajectory& traj, const RotatorProfile& profile);

} // namespace rotator
