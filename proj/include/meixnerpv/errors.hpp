#pragma once

#include <stdexcept>
#include <string>

namespace meixnerpv {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Model parameters violate the positivity/admissibility conditions of a lattice.
struct ValidationError : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

// Gamma-type factor evaluated at (or too close to) a nonpositive integer.
struct PoleError : Error {
    using Error::Error;
};

// Painleve equation evaluated at y in {0,1} or t = 0.
struct SingularityError : Error {
    using Error::Error;
};

// A transformation denominator vanished at the sample point.
struct DenominatorZero : Error {
    using Error::Error;
};

// Radicand sign incompatible with a real branch (needs A >= 0, B <= 0, D < 0).
struct SignDomainError : Error {
    using Error::Error;
};

// Linear-combination coefficient degenerated to 0 or 1.
struct DegenerateM : Error {
    using Error::Error;
};

// Adaptive step control drove the step size below representable resolution,
// usually a singularity on the integration path.
struct StepSizeUnderflow : Error {
    using Error::Error;
};

// Estimated correct digits fell below the trust threshold.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// A forward recurrence step hit an exact 0/0 (degenerate ray).
struct IndeterminateStep : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

} // namespace meixnerpv
