#include "rotator/profiles.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rotator/errors.hpp"

namespace rotator {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// f = c1 sqrt(1 + c2 r), r = sqrt(Q), derivatives with respect to Q.
ProfileDerivs custom_family(double c1, double c2, double Q) {
    const double r = std::sqrt(Q);
    const double u = 1.0 + c2 * r;
    const double su = std::sqrt(u);
    ProfileDerivs d;
    d.f = c1 * su;
    d.fp = c1 * c2 / (4.0 * r * su);
    d.fpp = -c1 * c2 * (2.0 + 3.0 * c2 * r) / (16.0 * r * r * r * u * su);
    return d;
}

} // namespace

RotatorProfile RotatorProfile::fundamental() {
    return {Variant::Fundamental, 0, 0, "fundamental", 0.0, kInf, false};
}

RotatorProfile RotatorProfile::partner() {
    return {Variant::Partner, 0, 0, "partner", 0.0, 1.0, false};
}

RotatorProfile RotatorProfile::affine(double a) {
    std::ostringstream name;
    name << "affine:" << a;
    // keep f > 0: for a < 0 the domain is cut at the zero of 1 + aQ
    const double hi = a < 0.0 ? -1.0 / a : kInf;
    return {Variant::Affine, a, 0, name.str(), 0.0, hi, true};
}

RotatorProfile RotatorProfile::deformed(double eps) {
    std::ostringstream name;
    name << "deformed:" << eps;
    return {Variant::Deformed, eps, 0, name.str(), 0.0, kInf, false};
}

RotatorProfile RotatorProfile::custom(double c1, double c2) {
    if (c1 <= 0.0) throw ConfigError("custom profile requires c1 > 0");
    std::ostringstream name;
    name << "custom:" << c1 << ":" << c2;
    const double hi = c2 < 0.0 ? 1.0 / (c2 * c2) : kInf;
    return {Variant::Custom, c1, c2, name.str(), 0.0, hi, false};
}

RotatorProfile RotatorProfile::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::string rest = spec.substr(colon + 1);
        std::istringstream in(rest);
        std::string tok;
        while (std::getline(in, tok, ':')) {
            try {
                std::size_t used = 0;
                args.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ConfigError("bad numeric argument in profile spec '" + spec + "'");
            }
        }
    }
    if (head == "fundamental" && args.empty()) return fundamental();
    if (head == "partner" && args.empty()) return partner();
    if (head == "affine" && args.size() == 1) return affine(args[0]);
    if (head == "deformed" && args.size() == 1) return deformed(args[0]);
    if (head == "custom" && args.size() == 2) return custom(args[0], args[1]);
    throw ConfigError("unknown profile spec '" + spec +
                      "' (expected fundamental|partner|affine:a|deformed:eps|custom:c1:c2)");
}

bool RotatorProfile::in_domain(double Q) const {
    if (!std::isfinite(Q)) return false;
    if (Q < q_lo_ || (Q == q_lo_ && !q_lo_closed_)) return false;
    return Q < q_hi_;
}

ProfileDerivs RotatorProfile::eval(double Q) const {
    if (!in_domain(Q)) {
        std::ostringstream msg;
        msg << "Q = " << Q << " outside domain of profile " << name_;
        throw DomainError(msg.str());
    }
    ProfileDerivs d;
    switch (variant_) {
    case Variant::Fundamental:
        d = custom_family(1.0, 1.0, Q);
        break;
    case Variant::Partner:
        d = custom_family(1.0, -1.0, Q);
        break;
    case Variant::Affine:
        d = {1.0 + p1_ * Q, p1_, 0.0};
        break;
    case Variant::Deformed:
        d = custom_family(1.0, 1.0, Q);
        d.f += p1_ * Q;
        d.fp += p1_;
        break;
    case Variant::Custom:
        d = custom_family(p1_, p2_, Q);
        break;
    }
    if (!(d.f > 0.0)) {
        std::ostringstream msg;
        msg << "f(Q) = " << d.f << " <= 0 at Q = " << Q << " for profile " << name_;
        throw DomainError(msg.str());
    }
    return d;
}

double degeneracy_factor(const RotatorProfile& profile, double Q) {
    const ProfileDerivs d = profile.eval(Q);
    if (d.fp == 0.0) throw SingularDerivative("f'(Q) = 0; degeneracy factor undefined");
    return 1.0 + 2.0 * Q * (d.fp / d.f + d.fpp / d.fp);
}

double casimir_mass_sq(const RotatorProfile& profile, double Q, double m) {
    const ProfileDerivs d = profile.eval(Q);
    return m * m * (d.f * d.f - 4.0 * Q * d.f * d.fp);
}

double casimir_spin_sq(const RotatorProfile& profile, double Q, double m, double ell) {
    const ProfileDerivs d = profile.eval(Q);
    const double m2 = m * m;
    return -4.0 * m2 * m2 * ell * ell * Q * d.f * d.f * d.fp * d.fp;
}

std::pair<double, double> fit_degenerate_family(double Q0, double f0, double f0p) {
    const double r0 = std::sqrt(Q0);
    const double rho = f0p / f0;
    const double denom = 1.0 - 4.0 * rho * r0 * r0;
    if (denom == 0.0) throw SingularDerivative("initial data not in the closed-form family");
    const double c2 = 4.0 * rho * r0 / denom;
    const double c1 = f0 / std::sqrt(1.0 + c2 * r0);
    return {c1, c2};
}

std::vector<OdeSample> solve_degeneracy_ode(double Q0, double f0, double f0p, double Q_end,
                                            int steps) {
    if (f0p == 0.0) throw SingularDerivative("f0' = 0; degeneracy ODE is singular");
    if (!(Q0 > 0.0) || !(f0 > 0.0) || !(Q_end > Q0) || steps < 1)
        throw ConfigError("degeneracy ODE requires Q0 > 0, f0 > 0, Q_end > Q0, steps >= 1");

    const auto rhs = [](double Q, double f, double g, double& df, double& dg) {
        df = g;
        dg = -g * (0.5 / Q + g / f);
    };

    std::vector<OdeSample> table;
    table.reserve(static_cast<std::size_t>(steps) + 1);
    const double h = (Q_end - Q0) / steps;
    double Q = Q0, f = f0, g = f0p;
    table.push_back({Q, f, g});
    for (int i = 0; i < steps; ++i) {
        double k1f, k1g, k2f, k2g, k3f, k3g, k4f, k4g;
        rhs(Q, f, g, k1f, k1g);
        rhs(Q + 0.5 * h, f + 0.5 * h * k1f, g + 0.5 * h * k1g, k2f, k2g);
        rhs(Q + 0.5 * h, f + 0.5 * h * k2f, g + 0.5 * h * k2g, k3f, k3g);
        rhs(Q + h, f + h * k3f, g + h * k3g, k4f, k4g);
        f += h / 6.0 * (k1f + 2.0 * (k2f + k3f) + k4f);
        g += h / 6.0 * (k1g + 2.0 * (k2g + k3g) + k4g);
        Q = Q0 + (i + 1) * h;
        if (!(f > 0.0) || !std::isfinite(f) || !std::isfinite(g)) {
            std::ostringstream msg;
            msg << "degeneracy ODE left f > 0 at Q = " << Q;
            throw StepFailure(msg.str());
        }
        table.push_back({Q, f, g});
    }
    return table;
}

} // namespace rotator
