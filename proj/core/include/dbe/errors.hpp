#pragma once

#include <stdexcept>
#include <string>

namespace dbe {

/// Base class of all errors thrown by this library. `name()` is a stable,
/// machine-readable tag (also used by the CLI's structured error output).
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define DBE_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                         \
    public:                                                              \
        explicit Name(const std::string& what) : Error(#Name, what) {}  \
    }

// Argument/state outside the mathematically admissible set.
DBE_DEFINE_ERROR(DomainError);

// Collision-list canonicalization.
DBE_DEFINE_ERROR(ConflictingCoefficients);
DBE_DEFINE_ERROR(ConservationViolation);
DBE_DEFINE_ERROR(NegativeCoefficient);

// Equilibrium solvers.
DBE_DEFINE_ERROR(NotNormal);
DBE_DEFINE_ERROR(NoConvergence);
DBE_DEFINE_ERROR(DegenerateJacobian);

// Time/space integration.
DBE_DEFINE_ERROR(BoundsViolation);
DBE_DEFINE_ERROR(StepLimitExceeded);
DBE_DEFINE_ERROR(SingularB);

// Linearized operator.
DBE_DEFINE_ERROR(NotEquilibrium);
DBE_DEFINE_ERROR(NotPSD);
DBE_DEFINE_ERROR(KernelMismatch);

// File and option handling.
DBE_DEFINE_ERROR(ParseError);
DBE_DEFINE_ERROR(ValidationError);

#undef DBE_DEFINE_ERROR

} // namespace dbe
