// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace splatbench {

enum class ErrorCode {
    InvalidConfig,
    InvalidCloud,
    DegenerateCloud,
    EmptyResult,
    CloudTooSmall,
    DimensionMismatch,
    UndefinedMetric,
    AllInvalid,
    BadMagic,
    Truncated,
    LabelOutOfRange,
    UnsupportedVersion,
    UnsupportedPly,
    MissingColumn,
    UnknownCategory,
    SchemaMismatch,
    IoFailure,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

    ErrorCode code() const noexcept { return code_; }
    /// The message without the code prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

} // namespace splatbench
