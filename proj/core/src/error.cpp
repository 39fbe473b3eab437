#include "nilflat/error.hpp"

namespace nilflat {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::ClassExceeded: return "ClassExceeded";
    case ErrorKind::BasisNotAdapted: return "BasisNotAdapted";
    case ErrorKind::JacobiViolated: return "JacobiViolated";
    case ErrorKind::NotSkew: return "NotSkew";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::DegeneratePlane: return "DegeneratePlane";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::BudgetNotMet: return "BudgetNotMet";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace nilflat
