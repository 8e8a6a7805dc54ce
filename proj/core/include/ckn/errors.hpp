#pragma once

#include <stdexcept>
#include <string>

namespace ckn {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter set violates the admissibility conditions (or cannot be parsed).
struct InvalidParams : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of a function (e.g. Gamma at x <= 0).
struct DomainError : Error {
    using Error::Error;
};

// Result not representable in double precision.
struct OverflowError : Error {
    using Error::Error;
};

// Endpoint exponent check shows the integral does not converge.
struct DivergentIntegral : Error {
    using Error::Error;
};

// Requested tolerance not reached within the refinement budget.
struct QuadratureFailure : Error {
    using Error::Error;
};

// Quotient undefined because the denominator norm vanishes.
struct DegenerateProfile : Error {
    using Error::Error;
};

// Optimizer ran out of iterations without meeting its tolerances.
struct NonConvergence : Error {
    using Error::Error;
};

// Radius sequence for the origin-density limit did not settle.
struct NoLimit : Error {
    using Error::Error;
};

// A constant below the Euclidean optimum where the theory forbids it.
struct InvalidConstant : Error {
    using Error::Error;
};

// File / format problems on the CSV and JSON interfaces.
struct IoError : Error {
    using Error::Error;
};

}  // namespace ckn
