#include "fmcw/error.hpp"

namespace fmcw {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
        case ErrorCode::ZeroSlopeDifference: return "ZeroSlopeDifference";
        case ErrorCode::InvalidProbability: return "InvalidProbability";
        case ErrorCode::InfeasibleGeometry: return "InfeasibleGeometry";
        case ErrorCode::AliasedTarget: return "AliasedTarget";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SignalTooShort: return "SignalTooShort";
        case ErrorCode::InconsistentDimensions: return "InconsistentDimensions";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::DegenerateNoiseEstimate: return "DegenerateNoiseEstimate";
        case ErrorCode::EmptyDetectableSet: return "EmptyDetectableSet";
        case ErrorCode::EmptyBinSet: return "EmptyBinSet";
        case ErrorCode::Io: return "Io";
        case ErrorCode::TrialFailed: return "TrialFailed";
    }
    return "Unknown";
}

}  // namespace fmcw
