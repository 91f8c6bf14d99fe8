#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ordest {

enum class ErrorCode {
    SampleTooSmall,
    DegenerateSample,
    LinexShapeViolation,
    NoSignChange,
    QuadratureNoConverge,
    UnsupportedKind,
    InvalidCensoringPlan,
    NotRecordSequence,
    InvalidArgument,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` is the machine-readable
/// category reported by the CLI.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ordest
