#pragma once

#include <stdexcept>
#include <string>

namespace sgpert {

// Base for every error raised by the library. Subclasses name the violated
// precondition so callers (the CLI in particular) can map them to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A time or length is not an integer multiple of the relevant grid step.
class AlignmentError : public Error {
public:
    using Error::Error;
};

// Two operands live on different grids or use different exponents.
class GridMismatch : public Error {
public:
    using Error::Error;
};

// Seminorm index whose window [-n, b] leaves the grid, or similar.
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

// Input violates a domain requirement (f(0) != 0, x not in D(A), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Effective contraction constant t0^{1/p} K is not below one.
class ContractionError : public Error {
public:
    using Error::Error;
};

// An inner fixed-point iteration failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace sgpert
