#pragma once

#include <stdexcept>
#include <string>

namespace scail {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tensor dimensions do not line up.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A value violates an operation precondition.
class InputError : public Error {
public:
    using Error::Error;
};

/// A run or experiment configuration is invalid.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Stored state disagrees with what an operation expects.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Rank statistics contain a zero mean at a rank occupied by a nonzero weight.
class SingularStatsError : public Error {
public:
    SingularStatsError(int class_id, int rank, const std::string& msg)
        : Error(msg), class_id(class_id), rank(rank) {}
    int class_id;
    int rank;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& msg) : Error(msg), line(line) {}
    int line;
};

}  // namespace scail
