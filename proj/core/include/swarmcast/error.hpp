#pragma once

#include <stdexcept>
#include <string>

namespace swarmcast {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data: bad header, unparseable row, duplicate month.
class CsvError : public Error {
public:
    using Error::Error;
};

/// Caller asked for something nonsensical (unknown column, horizon 0, ...).
class UsageError : public Error {
public:
    using Error::Error;
};

/// A configuration value violates its documented range or shape.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A vector or weight buffer has the wrong length for the requested operation.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A computation hit a numerically undefined or non-finite state.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace swarmcast
