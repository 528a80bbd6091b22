// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "splatbench/cloud.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace splatbench::io {

struct IngestResult {
    LabeledCloud cloud;
    std::vector<std::string> warnings;
};

/// ASCII or binary little-endian PLY. Reads x, y, z and an optional scalar
/// label property from the "vertex" element; other elements are ignored.
/// Throws Error(UnsupportedPly) for big-endian files and list properties on
/// vertices, Error(Truncated) for short payloads.
IngestResult ingest_ply(const std::filesystem::path& path, std::string_view label_property = "label");
IngestResult parse_ply(std::string_view contents, std::string_view label_property = "label");

/// Comma-separated values with a header row naming x, y, z and optionally the
/// label column. Throws Error(MissingColumn) when a coordinate column is absent.
IngestResult ingest_csv(const std::filesystem::path& path, std::string_view label_column = "label");
IngestResult parse_csv(std::string_view contents, std::string_view label_column = "label");

} // namespace splatbench::io
