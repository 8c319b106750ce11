#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace rz {

enum class ErrorCode {
    NonPositiveWeight,
    WeightsDoNotSumToOne,
    DuplicateAtom,
    DimensionMismatch,
    InvalidSlots,
    DegenerateMap,
    InvalidConstraintCover,
    InvalidArgument,
    BudgetExceeded,
    ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Returned (not thrown) when a certification search runs out of depth or
/// finds a point that refutes the requested inequality.
struct Inconclusive {
    std::string reason;
};

template <typename T>
using Outcome = std::variant<T, Inconclusive>;

template <typename T>
bool certified(const Outcome<T>& outcome) {
    return std::holds_alternative<T>(outcome);
}

}  // namespace rz
