// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "splatbench/manifest.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace splatbench::io {

inline constexpr int kManifestSchemaVersion = 1;

/// Parses one JSON object. Required keys: sample_id, object_category,
/// affordance_type, cloud_path. Optional: prediction_path, dataset, split,
/// schema_version. Unknown vocabulary names throw Error(UnknownCategory);
/// malformed records or a newer schema_version throw Error(SchemaMismatch).
/// Affordance names are stored in canonical spelling.
SampleManifest parse_manifest_record(std::string_view json_line);
std::string manifest_record_to_json(const SampleManifest& record);

/// JSON lines; blank lines are skipped. Error messages carry the line number.
std::vector<SampleManifest> load_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, std::span<const SampleManifest> records);

/// One pairing per row of the dataset statistics tables, with synthetic cloud
/// paths "<dataset>/<sample_id>.pcaf". Sample ids start at `first_id`.
std::vector<SampleManifest> synthesize_dataset_manifest(std::string_view dataset, std::uint64_t first_id = 0);

} // namespace splatbench::io
