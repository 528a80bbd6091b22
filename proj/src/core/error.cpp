// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/error.hpp"

namespace splatbench {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidCloud: return "InvalidCloud";
    case ErrorCode::DegenerateCloud: return "DegenerateCloud";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::CloudTooSmall: return "CloudTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UndefinedMetric: return "UndefinedMetric";
    case ErrorCode::AllInvalid: return "AllInvalid";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::Truncated: return "Truncated";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::UnsupportedPly: return "UnsupportedPly";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

} // namespace splatbench
