#pragma once

#include <stdexcept>
#include <string>

namespace gdr {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument, violated precondition or invalid configuration.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed input file (bad cell, missing column, ...).
class ParseError : public Error {
public:
    using Error::Error;
};

/// An iterative numerical routine failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

} // namespace gdr
