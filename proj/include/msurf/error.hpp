#pragma once

#include <stdexcept>
#include <string>

namespace msurf {

enum class ErrorKind {
    PoleProximity,
    BranchAmbiguity,
    NoConvergence,
    ZeroGauss,
    InvalidOrder,
    OrderingViolation,
    NotTrinoid,
    DegenerateTrace,
    InfeasibleStart,
    MeshDegenerate,
    WeldFailure,
    NonManifold,
    ExtrapolationUnstable,
    SchemaError,
    InvariantViolation,
    IOFailure,
    InvalidPath,
    UnknownCheck,
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ZeroGauss: return "ZeroGauss";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::OrderingViolation: return "OrderingViolation";
    case ErrorKind::NotTrinoid: return "NotTrinoid";
    case ErrorKind::DegenerateTrace: return "DegenerateTrace";
    case ErrorKind::InfeasibleStart: return "InfeasibleStart";
    case ErrorKind::MeshDegenerate: return "MeshDegenerate";
    case ErrorKind::WeldFailure: return "WeldFailure";
    case ErrorKind::NonManifold: return "NonManifold";
    case ErrorKind::ExtrapolationUnstable: return "ExtrapolationUnstable";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::IOFailure: return "IOFailure";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::UnknownCheck: return "UnknownCheck";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace msurf
