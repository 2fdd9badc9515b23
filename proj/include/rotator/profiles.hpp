#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rotator {

/// f(Q) with its first two derivatives at one point.
struct ProfileDerivs {
    double f;
    double fp;
    double fpp;
};

/**
 * The shape function f(Q) of a rotator action  -m Integral sqrt(xdot.xdot) f(Q).
 *
 * Variants:
 *   fundamental        f = sqrt(1 + sqrt(Q)),  Q > 0
 *   partner            f = sqrt(1 - sqrt(Q)),  0 < Q < 1
 *   affine (a)         f = 1 + a Q,            Q >= 0
 *   deformed (eps)     f = sqrt(1 + sqrt(Q)) + eps Q,  Q > 0
 *   custom (c1, c2)    f = c1 sqrt(1 + c2 sqrt(Q))
 *
 * Derivatives are analytic per variant; the Hessian formulas amplify
 * derivative noise too much for finite differences in production paths.
 */
class RotatorProfile {
public:
    enum class Variant { Fundamental, Partner, Affine, Deformed, Custom };

    static RotatorProfile fundamental();
    static RotatorProfile partner();
    static RotatorProfile affine(double a);
    static RotatorProfile deformed(double eps);
    static RotatorProfile custom(double c1, double c2);

    /// Parse "fundamental" | "partner" | "affine:a" | "deformed:eps" | "custom:c1:c2".
    static RotatorProfile parse(const std::string& spec);

    Variant variant() const { return variant_; }
    const std::string& name() const { return name_; }

    /// Defined in the sense of the degeneracy analysis: the velocity
    /// Hessian determinant vanishes identically in Q.
    bool is_degenerate_family() const {
        return variant_ == Variant::Fundamental || variant_ == Variant::Partner ||
               variant_ == Variant::Custom;
    }

    bool in_domain(double Q) const;

    /// Open-interval domain bounds (lo excluded unless variant admits Q=0).
    double domain_lo() const { return q_lo_; }
    double domain_hi() const { return q_hi_; }

    /// f, f', f'' at Q. Throws DomainError outside the domain.
    ProfileDerivs eval(double Q) const;

private:
    RotatorProfile(Variant v, double p1, double p2, std::string name, double lo, double hi,
                   bool zero_ok)
        : variant_(v), p1_(p1), p2_(p2), name_(std::move(name)), q_lo_(lo), q_hi_(hi),
          q_lo_closed_(zero_ok) {}

    Variant variant_;
    double p1_ = 0.0; // a | eps | c1
    double p2_ = 0.0; // c2
    std::string name_;
    double q_lo_;
    double q_hi_;
    bool q_lo_closed_;
};

/// 1 + 2Q (f'/f + f''/f'); identically zero exactly on the degenerate family.
double degeneracy_factor(const RotatorProfile& profile, double Q);

/// First Casimir invariant P.P = m^2 (f^2 - 4 Q f f').
double casimir_mass_sq(const RotatorProfile& profile, double Q, double m);

/// Second Casimir invariant W.W = -4 m^4 l^2 Q f^2 f'^2.
double casimir_spin_sq(const RotatorProfile& profile, double Q, double m, double ell);

/**
 * The coefficients (c1, c2) of the degenerate family c1 sqrt(1 + c2 sqrt(Q))
 * matching (f0, f0') at Q0. Closed-form inversion.
 */
std::pair<double, double> fit_degenerate_family(double Q0, double f0, double f0p);

/// One row of a tabulated degeneracy-condition solution.
struct OdeSample {
    double Q;
    double f;
    double fp;
};

/**
 * Integrates the degeneracy condition rearranged as an ODE,
 * f'' = -f' (1/(2Q) + f'/f), from (Q0, f0, f0') to Q_end with fixed-step
 * RK4. The solution must coincide with the fitted closed form.
 */
std::vector<OdeSample> solve_degeneracy_ode(double Q0, double f0, double f0p, double Q_end,
                                            int steps);

} // namespace rotator
