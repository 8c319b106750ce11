#include "rz/error.hpp"

namespace rz {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::WeightsDoNotSumToOne: return "WeightsDoNotSumToOne";
        case ErrorCode::DuplicateAtom: return "DuplicateAtom";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidSlots: return "InvalidSlots";
        case ErrorCode::DegenerateMap: return "DegenerateMap";
        case ErrorCode::InvalidConstraintCover: return "InvalidConstraintCover";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace rz
