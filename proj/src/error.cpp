#include "hazard_lfd/error.hpp"

namespace hazard_lfd {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::WrongFrameKind: return "WrongFrameKind";
        case ErrorCode::OffRoad: return "OffRoad";
        case ErrorCode::MalformedCsv: return "MalformedCsv";
        case ErrorCode::TooFewKnots: return "TooFewKnots";
        case ErrorCode::DuplicateAbscissa: return "DuplicateAbscissa";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::EmptyChannel: return "EmptyChannel";
        case ErrorCode::EmptySequence: return "EmptySequence";
        case ErrorCode::EmptySide: return "EmptySide";
        case ErrorCode::NonMonotoneY: return "NonMonotoneY";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::TooFewDemos: return "TooFewDemos";
        case ErrorCode::EmptyGroup: return "EmptyGroup";
        case ErrorCode::NoBehaviorDetected: return "NoBehaviorDetected";
        case ErrorCode::InsufficientDemos: return "InsufficientDemos";
        case ErrorCode::OffRoadDemo: return "OffRoadDemo";
        case ErrorCode::NegativeSpeed: return "NegativeSpeed";
        case ErrorCode::ModelRoadMismatch: return "ModelRoadMismatch";
        case ErrorCode::OffRoadEgo: return "OffRoadEgo";
        case ErrorCode::OrderViolation: return "OrderViolation";
        case ErrorCode::UnsupportedOverlap: return "UnsupportedOverlap";
        case ErrorCode::InfeasibleProfile: return "InfeasibleProfile";
        case ErrorCode::EmptyAfterThreshold: return "EmptyAfterThreshold";
        case ErrorCode::DegenerateSample: return "DegenerateSample";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::AllZeroDifferences: return "AllZeroDifferences";
        case ErrorCode::CrossTrafficComparison: return "CrossTrafficComparison";
        case ErrorCode::MalformedDocument: return "MalformedDocument";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace hazard_lfd
