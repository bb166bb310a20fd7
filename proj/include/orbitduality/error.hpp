#pragma once

#include <stdexcept>
#include <string>

namespace orbitduality {

enum class ErrorKind {
    ParityMismatch,
    NotAMember,
    NotSpecial,
    NotTypeB,
    DecompositionFailure,
    InvalidLevi,
    NotRichardson,
    RetriesExhausted,
    PrecisionLoss,
    SingularQuotient,
    FullyDegenerate,
    GenericityFailure,
    ParityGuard,
    UnknownSuite,
    IoError,
    Usage,
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::ParityMismatch: return "ParityMismatch";
    case ErrorKind::NotAMember: return "NotAMember";
    case ErrorKind::NotSpecial: return "NotSpecial";
    case ErrorKind::NotTypeB: return "NotTypeB";
    case ErrorKind::DecompositionFailure: return "DecompositionFailure";
    case ErrorKind::InvalidLevi: return "InvalidLevi";
    case ErrorKind::NotRichardson: return "NotRichardson";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::SingularQuotient: return "SingularQuotient";
    case ErrorKind::FullyDegenerate: return "FullyDegenerate";
    case ErrorKind::GenericityFailure: return "GenericityFailure";
    case ErrorKind::ParityGuard: return "ParityGuard";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::Usage: return "Usage";
    }
    return "Unknown";
}

struct Error : std::runtime_error {
    ErrorKind kind;
    Error(ErrorKind k, const std::string& what)
        : std::runtime_error(std::string(kind_name(k)) + ": " + what), kind(k) {}
};

} // namespace orbitduality
