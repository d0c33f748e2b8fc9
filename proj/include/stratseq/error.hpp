#pragma once

#include <stdexcept>
#include <string>

namespace stratseq {

/// Error categories raised by the engine. Every failure mode carries one of
/// these kinds so callers (and tests) can dispatch without string matching.
enum class ErrorKind {
    UnknownKey,
    InadmissibleSystem,
    Ambiguous,
    Inconsistent,
    NoPointClass,
    WholeSpaceNotHere,
    UnresolvedBase,
    NoRuleApplies,
    ExactnessViolated,
    UnknownCell,
    NotDegenerate,
    VanishingBandViolated,
    DegreeOutOfRange,
    NotDivisible,
    MissingCharacter,
    InvalidSample,
    RankNotStabilized,
    SamplingExhausted,
    UnexpectedDifferential,
    ParseError,
    IoError,
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
        case ErrorKind::UnknownKey: return "UnknownKey";
        case ErrorKind::InadmissibleSystem: return "InadmissibleSystem";
        case ErrorKind::Ambiguous: return "Ambiguous";
        case ErrorKind::Inconsistent: return "Inconsistent";
        case ErrorKind::NoPointClass: return "NoPointClass";
        case ErrorKind::WholeSpaceNotHere: return "WholeSpaceNotHere";
        case ErrorKind::UnresolvedBase: return "UnresolvedBase";
        case ErrorKind::NoRuleApplies: return "NoRuleApplies";
        case ErrorKind::ExactnessViolated: return "ExactnessViolated";
        case ErrorKind::UnknownCell: return "UnknownCell";
        case ErrorKind::NotDegenerate: return "NotDegenerate";
        case ErrorKind::VanishingBandViolated: return "VanishingBandViolated";
        case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
        case ErrorKind::NotDivisible: return "NotDivisible";
        case ErrorKind::MissingCharacter: return "MissingCharacter";
        case ErrorKind::InvalidSample: return "InvalidSample";
        case ErrorKind::RankNotStabilized: return "RankNotStabilized";
        case ErrorKind::SamplingExhausted: return "SamplingExhausted";
        case ErrorKind::UnexpectedDifferential: return "UnexpectedDifferential";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
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

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

} // namespace stratseq
