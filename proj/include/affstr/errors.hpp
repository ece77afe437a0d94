#pragma once

#include <stdexcept>
#include <string>

namespace affstr {

enum class ErrorCode {
    NonComposable,
    ForbiddenPair,
    IncompatibleEndpoints,
    ForbiddenJunction,
    NonIntegralRank,
    NotLocallyFree,
    SignMismatch,
    IndexOutOfRange,
    NotARoot,
    NotRealRoot,
    NotApplicable,
    NotSimpleRegular,
    ParseError,
    IncompleteUniverse,
    UnsupportedBandEvaluation,
    UnsupportedShape,
    RelationViolation,
    OutOfBounds,
    Internal,
};

inline const char* name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::NonComposable: return "NonComposable";
    case ErrorCode::ForbiddenPair: return "ForbiddenPair";
    case ErrorCode::IncompatibleEndpoints: return "IncompatibleEndpoints";
    case ErrorCode::ForbiddenJunction: return "ForbiddenJunction";
    case ErrorCode::NonIntegralRank: return "NonIntegralRank";
    case ErrorCode::NotLocallyFree: return "NotLocallyFree";
    case ErrorCode::SignMismatch: return "SignMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::NotRealRoot: return "NotRealRoot";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NotSimpleRegular: return "NotSimpleRegular";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IncompleteUniverse: return "IncompleteUniverse";
    case ErrorCode::UnsupportedBandEvaluation: return "UnsupportedBandEvaluation";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::RelationViolation: return "RelationViolation";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::Internal: return "Internal";
    }
    return "?";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, int position = -1)
        : std::runtime_error(std::string(name(code)) + ": " + what), code_(code), position_(position)
    {
    }
    ErrorCode code() const { return code_; }
    int position() const { return position_; }

private:
    ErrorCode code_;
    int position_;
};

} // namespace affstr
