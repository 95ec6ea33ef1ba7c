#pragma once

#include <stdexcept>
#include <string>

namespace nonext {

enum class ErrorCode {
    NegativeWeight,
    ZeroTotalMass,
    NotNormalized,
    NonFiniteInput,
    ZeroSize,
    ZeroMarginal,
    DenominatorTooSmall,
    NonPositiveQ,
    UnknownPhi,
    NonFinitePhi,
    BadGrid,
    PhiZero,
    PhiDerivativeZero,
    ParseError,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeWeight:      return "NegativeWeight";
        case ErrorCode::ZeroTotalMass:       return "ZeroTotalMass";
        case ErrorCode::NotNormalized:       return "NotNormalized";
        case ErrorCode::NonFiniteInput:      return "NonFiniteInput";
        case ErrorCode::ZeroSize:            return "ZeroSize";
        case ErrorCode::ZeroMarginal:        return "ZeroMarginal";
        case ErrorCode::DenominatorTooSmall: return "DenominatorTooSmall";
        case ErrorCode::NonPositiveQ:        return "NonPositiveQ";
        case ErrorCode::UnknownPhi:          return "UnknownPhi";
        case ErrorCode::NonFinitePhi:        return "NonFinitePhi";
        case ErrorCode::BadGrid:             return "BadGrid";
        case ErrorCode::PhiZero:             return "PhiZero";
        case ErrorCode::PhiDerivativeZero:   return "PhiDerivativeZero";
        case ErrorCode::ParseError:          return "ParseError";
    }
    return "Unknown";
}

/// Exception carrying a machine-checkable code plus a message naming the
/// operation that rejected its input.
class Error : public std::runtime_error {
 public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

 private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace nonext
