#pragma once

#include <stdexcept>
#include <string>

namespace fredholm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in incompatible spaces or have mismatched lengths.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A matrix failed the pivot-ratio invertibility check.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, double min_pivot, double max_pivot)
        : Error(what), min_pivot_(min_pivot), max_pivot_(max_pivot) {}

    double min_pivot() const noexcept { return min_pivot_; }
    double max_pivot() const noexcept { return max_pivot_; }

private:
    double min_pivot_;
    double max_pivot_;
};

/// A numerical decision could not be made reliably (e.g. singular values
/// straddling the rank threshold, or two routes disagreeing on a nullity).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Invalid argument values (non-positive weights, bad tolerances, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace fredholm
