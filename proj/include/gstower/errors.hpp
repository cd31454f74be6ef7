#ifndef GSTOWER_ERRORS_HPP
#define GSTOWER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gstower
{

// All library failures derive from Error so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the domain of a function (t outside ]0,1[, rho*t >= 1, rd <= alpha, ...).
struct DomainError : Error {
    using Error::Error;
};

// Operation precondition violated (e.g. r >= d^2/4 for the k0 computation).
struct PreconditionError : Error {
    using Error::Error;
};

// Cutting by an element of depth < 2.
struct DepthError : Error {
    using Error::Error;
};

// Computation would exceed a configured resource cap (term count, iteration count).
struct ResourceError : Error {
    using Error::Error;
};

// Measured data disagrees with a formula or an expected value.
struct ConsistencyError : Error {
    using Error::Error;
};

// Formula branch does not apply to the given input (e.g. tame bound asked for wild S).
struct BranchError : Error {
    using Error::Error;
};

// Malformed fixture, series or profile document.
struct FixtureError : Error {
    using Error::Error;
};

} // namespace gstower

#endif
