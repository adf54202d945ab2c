#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyschwarz {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inconsistent sizes between operands.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A configuration or input that violates a documented precondition.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A Cholesky-type factorization met a pivot that is not (sufficiently)
/// positive. `pivot()` is the index in the caller's numbering.
class NotSpdError : public Error {
public:
    NotSpdError(const std::string& what, std::int64_t pivot)
        : Error(what), pivot_(pivot) {}
    std::int64_t pivot() const noexcept { return pivot_; }

private:
    std::int64_t pivot_;
};

/// Breakdown of the conjugate gradient recurrence.
class SolverBreakdown : public Error {
public:
    using Error::Error;
};

}  // namespace polyschwarz
