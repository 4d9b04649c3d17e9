#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kvisits {

enum class ErrorCode {
    EmptyInput,
    NonPositiveDeadline,
    InvalidInstance,
    NonPositiveDiscretizedValue,
    ValueExceedsHorizon,
    DuplicatePosition,
    NotDiscretizedSequence,
    DuplicateTargets,
    SizeMismatch,
    PreconditionNotDistinct,
    PreconditionNotSingleValue,
    PreconditionNotTwoValues,
    PreconditionNotNormalized,
    PreconditionNotConsecutive,
    PreconditionTargetsNotAboveA,
    NonPositiveTarget,
    RangeTooWide,
    BudgetExhausted,
    InternalInvariantViolation,
    ParseError,
};

std::string_view to_string(ErrorCode code);

// Every contract violation raised by the library is an Error carrying a code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace kvisits
