// error.hpp — Error type shared by all qar modules

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qar {

enum class ErrorCode {
    InvalidArgument,
    ResidualTooLarge,
    ZeroFrequency,
    GroupingMismatch,
    NullSpaceDegenerate,
    TraceVanishing,
    StepRejected,
    ImaginaryLeak,
    WorkFlowZero,
    VirtualDivergence,
    Config,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::ZeroFrequency: return "ZeroFrequency";
    case ErrorCode::GroupingMismatch: return "GroupingMismatch";
    case ErrorCode::NullSpaceDegenerate: return "NullSpaceDegenerate";
    case ErrorCode::TraceVanishing: return "TraceVanishing";
    case ErrorCode::StepRejected: return "StepRejected";
    case ErrorCode::ImaginaryLeak: return "ImaginaryLeak";
    case ErrorCode::WorkFlowZero: return "WorkFlowZero";
    case ErrorCode::VirtualDivergence: return "VirtualDivergence";
    case ErrorCode::Config: return "Config";
    }
    return "Unknown";
}

} // namespace qar
