#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fluxion {

enum class ErrorCode {
    NonPositiveDecay,
    NegativeRabi,
    NonFiniteField,
    NonFiniteInput,
    SingularMatrix,
    UnsortedTimes,
    UnsortedGrid,
    StepTooLarge,
    ZeroRabiProduct,
    NotConverged,
    InvalidArgument,
    InvalidConfig,
    Io,
};

inline constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NonPositiveDecay: return "NonPositiveDecay";
    case ErrorCode::NegativeRabi: return "NegativeRabi";
    case ErrorCode::NonFiniteField: return "NonFiniteField";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::UnsortedTimes: return "UnsortedTimes";
    case ErrorCode::UnsortedGrid: return "UnsortedGrid";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ZeroRabiProduct: return "ZeroRabiProduct";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a machine
/// readable code and, where one applies, the name of the offending field.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string field, const std::string& detail = {})
        : std::runtime_error(format(code, field, detail))
        , code_(code)
        , field_(std::move(field))
    {
    }

    ErrorCode code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }

    /// True for errors caused by bad input (config, parameters, grids).
    bool is_input_error() const noexcept
    {
        switch (code_) {
        case ErrorCode::NonPositiveDecay:
        case ErrorCode::NegativeRabi:
        case ErrorCode::NonFiniteField:
        case ErrorCode::UnsortedTimes:
        case ErrorCode::UnsortedGrid:
        case ErrorCode::ZeroRabiProduct:
        case ErrorCode::InvalidArgument:
        case ErrorCode::InvalidConfig:
            return true;
        default:
            return false;
        }
    }

private:
    static std::string format(ErrorCode code, const std::string& field, const std::string& detail)
    {
        std::string msg(to_string(code));
        if (!field.empty())
            msg += "(" + field + ")";
        if (!detail.empty())
            msg += ": " + detail;
        return msg;
    }

    ErrorCode code_;
    std::string field_;
};

} // namespace fluxion
