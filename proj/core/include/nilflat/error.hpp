#pragma once

#include <stdexcept>
#include <string>

namespace nilflat {

enum class ErrorKind {
    DimensionMismatch,
    InvalidArgument,
    NotNilpotent,
    ClassExceeded,
    BasisNotAdapted,
    JacobiViolated,
    NotSkew,
    NotClosed,
    NotIntegral,
    NotPositiveDefinite,
    DegeneratePlane,
    BoundViolated,
    BudgetNotMet,
    Parse,
    Io,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace nilflat
