#pragma once

#include <stdexcept>
#include <string>

namespace nsf {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Exact arithmetic is not available for inputs this large.
struct OutOfSupportedRange : Error {
    using Error::Error;
};

// A sieve or sum was asked to materialize more elements than allowed.
struct CapacityExceeded : Error {
    using Error::Error;
};

// The factorization effort budget ran out before a full factorization.
struct FactorizationFailed : Error {
    using Error::Error;
};

// A verification range violates the pipeline preconditions.
struct InvalidRange : Error {
    using Error::Error;
};

// An argument required to be prime is not.
struct NotPrime : Error {
    using Error::Error;
};

// The requested E-bound cannot be evaluated with the given parameters.
struct UnsupportedEBound : Error {
    using Error::Error;
};

} // namespace nsf
