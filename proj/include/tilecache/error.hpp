#pragma once

#include <stdexcept>
#include <string>

namespace tilecache {

// Root of everything the library throws on bad input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid dimension, block spec, capacity or experiment setup.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed trace data or an event id outside the trace's id space.
class TraceError : public Error {
public:
    using Error::Error;
};

/// Nonpositive argument to a bound formula.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Cache too small for any block size >= 1 of the requested shape.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Matrix dimension mismatch.
class ShapeError : public Error {
public:
    using Error::Error;
};

}  // namespace tilecache
