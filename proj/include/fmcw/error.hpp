#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fmcw {

enum class ErrorCode {
    InvalidConfig,
    GammaOutOfRange,
    ZeroSlopeDifference,
    InvalidProbability,
    InfeasibleGeometry,
    AliasedTarget,
    DimensionMismatch,
    SignalTooShort,
    InconsistentDimensions,
    EmptyInput,
    DegenerateNoiseEstimate,
    EmptyDetectableSet,
    EmptyBinSet,
    Io,
    TrialFailed,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fmcw
