#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    CriticalPointSingularity,
    StepCrossesCriticalPoint,
    SingularCovariance,
    Unphysical,
    NonPureState,
    NonConvergedSeries,
    CutoffOverflow,
    NumericalBreakdown,
    NonNormalizedDensity,
    TruncationInsufficient,
    InsufficientSamples,
    Config,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the C
// layer can map it onto a status value without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace dicke
