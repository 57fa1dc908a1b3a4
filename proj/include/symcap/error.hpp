#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symcap {

enum class ErrorCode {
    InvalidArgument,
    Parse,
    Overflow,
    UnsupportedPair,
    SpeciesMismatch,
    IndexUnspecified,
    HypothesisViolated,
    EndNotPresent,
    NotApplicable,
    SymplectizationAmbient,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::UnsupportedPair: return "UnsupportedPair";
    case ErrorCode::SpeciesMismatch: return "SpeciesMismatch";
    case ErrorCode::IndexUnspecified: return "IndexUnspecified";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::EndNotPresent: return "EndNotPresent";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::SymplectizationAmbient: return "SymplectizationAmbient";
    }
    return "Unknown";
}

/// All library failures are reported through this one exception type; the
/// code distinguishes the contract that was broken.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace symcap
