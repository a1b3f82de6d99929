#pragma once

#include <stdexcept>
#include <string>

namespace ukit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A measure or matrix violates the invariants of its representation.
class RepresentationError : public Error {
public:
    using Error::Error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Two representations cannot be combined without an explicit conversion.
class ConversionError : public Error {
public:
    using Error::Error;
};

// A problem exceeds a hard size cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A pair of potentials fails the competitivity condition.
class CertificateError : public Error {
public:
    using Error::Error;
};

// Vector or matrix sizes do not match.
class DimensionError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : Error(what), last_residual_(last_residual) {}
    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

}  // namespace ukit
