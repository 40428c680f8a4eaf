#pragma once

#include <stdexcept>
#include <string>

namespace sumprod {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition violation on a mathematical operation (zero divisor,
/// zero dilation, 0 in a multiplicative set, non-disjoint parts, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input file or option string.
class InputError : public Error {
public:
    using Error::Error;
};

/// Invalid family or run configuration (bad parameters, empty pool).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A configured brute-force cap was exceeded.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// A D-bound witness failed one of its defining constraints.
/// The message names the failed constraint.
class InvalidWitnessError : public Error {
public:
    using Error::Error;
};

/// An exact check that should hold unconditionally failed.
class CheckFailedError : public Error {
public:
    using Error::Error;
};

/// Internal invariant broken; always a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace sumprod
