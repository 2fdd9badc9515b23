#pragma once

#include <stdexcept>
#include <string>

namespace rotator {

/// Base class for all rotator-lab errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Q outside the admissible domain of a profile, or f(Q) <= 0.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// f'(Q) = 0 where a formula divides by it.
struct SingularDerivative : Error {
    explicit SingularDerivative(const std::string& msg) : Error(msg) {}
};

/// ODE integration produced an inadmissible value (f crossed zero).
struct StepFailure : Error {
    explicit StepFailure(const std::string& msg) : Error(msg) {}
};

/// Q = 0 where the profile's momentum map is not defined (fundamental family).
struct DegenerateRotation : Error {
    explicit DegenerateRotation(const std::string& msg) : Error(msg) {}
};

/// The 2x2 velocity block A is not invertible (1 + 2Q f''/f' ~ 0).
struct SingularBlock : Error {
    explicit SingularBlock(const std::string& msg) : Error(msg) {}
};

/// The 5x5 velocity Hessian is numerically singular; accelerations undefined.
struct DegenerateHessian : Error {
    explicit DegenerateHessian(const std::string& msg) : Error(msg) {}
};

/// A chart-state invariant failed (superluminal velocity, pole approach).
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& msg) : Error(msg) {}
};

/// |p.k| too small for the projector that eliminates the multiplier.
struct ProjectorSingular : Error {
    explicit ProjectorSingular(const std::string& msg) : Error(msg) {}
};

/// Phase derivative vanished; the null direction is undefined there.
struct PhaseStall : Error {
    explicit PhaseStall(const std::string& msg) : Error(msg) {}
};

/// Two phases meant to share initial data do not agree at t = 0.
struct JetMismatch : Error {
    explicit JetMismatch(const std::string& msg) : Error(msg) {}
};

/// Bad CLI/config input.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace rotator
