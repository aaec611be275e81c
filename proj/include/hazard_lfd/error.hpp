#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hazard_lfd {

enum class ErrorCode {
    // geometry
    WrongFrameKind,
    OffRoad,
    MalformedCsv,
    // numerics
    TooFewKnots,
    DuplicateAbscissa,
    OutOfDomain,
    EmptyChannel,
    EmptySequence,
    EmptySide,
    // keyframe
    NonMonotoneY,
    TooShort,
    TooFewDemos,
    EmptyGroup,
    NoBehaviorDetected,
    InsufficientDemos,
    OffRoadDemo,
    // constraints
    NegativeSpeed,
    ModelRoadMismatch,
    OffRoadEgo,
    OrderViolation,
    UnsupportedOverlap,
    // demogen
    InfeasibleProfile,
    // analysis
    EmptyAfterThreshold,
    DegenerateSample,
    LengthMismatch,
    AllZeroDifferences,
    CrossTrafficComparison,
    // documents
    MalformedDocument,
    InvalidArgument,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a stable error code; every library failure is reported through it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hazard_lfd
