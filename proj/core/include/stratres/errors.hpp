#pragma once

#include <stdexcept>
#include <string>

namespace stratres {

// Error taxonomy for the whole library. `Validation` failures mean the caller
// handed us arguments outside a documented precondition; `Numerical` failures
// mean a well-posed computation did not reach its target (no convergence,
// step underflow, budget exhausted).
enum class ErrorCode {
    OutOfRange,
    OutOfRadius,
    AxisSingularity,
    CriticalSlope,
    ChartSingularity,
    BadEpsilon,
    BadConfig,
    BadParams,
    DomainNotCovered,
    NotEquilibrium,
    StartIsEquilibrium,
    AtCenter,
    NoEvent,
    InnerOverflow,
    NoConvergence,
    StepUnderflow,
    BudgetExhausted,
};

constexpr const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::OutOfRadius: return "OutOfRadius";
        case ErrorCode::AxisSingularity: return "AxisSingularity";
        case ErrorCode::CriticalSlope: return "CriticalSlope";
        case ErrorCode::ChartSingularity: return "ChartSingularity";
        case ErrorCode::BadEpsilon: return "BadEpsilon";
        case ErrorCode::BadConfig: return "BadConfig";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::DomainNotCovered: return "DomainNotCovered";
        case ErrorCode::NotEquilibrium: return "NotEquilibrium";
        case ErrorCode::StartIsEquilibrium: return "StartIsEquilibrium";
        case ErrorCode::AtCenter: return "AtCenter";
        case ErrorCode::NoEvent: return "NoEvent";
        case ErrorCode::InnerOverflow: return "InnerOverflow";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::StepUnderflow: return "StepUnderflow";
        case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    }
    return "Unknown";
}

// True for codes that indicate invalid input rather than a numerical failure.
constexpr bool is_validation_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::OutOfRange:
        case ErrorCode::OutOfRadius:
        case ErrorCode::AxisSingularity:
        case ErrorCode::CriticalSlope:
        case ErrorCode::ChartSingularity:
        case ErrorCode::BadEpsilon:
        case ErrorCode::BadConfig:
        case ErrorCode::BadParams:
        case ErrorCode::DomainNotCovered:
        case ErrorCode::NotEquilibrium:
        case ErrorCode::StartIsEquilibrium:
        case ErrorCode::AtCenter:
        case ErrorCode::NoEvent:
            return true;
        default:
            return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace stratres
