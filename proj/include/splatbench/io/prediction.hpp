// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace splatbench::io {

/// Per-point scores for one cloud: `<stem>.f32` holds n float32 LE values,
/// `<stem>.json` holds {"sample_id", "model_name", "n_points"}.
struct Prediction {
    std::uint64_t sample_id = 0;
    std::string model_name;
    std::vector<double> scores;
};

std::filesystem::path sidecar_path(const std::filesystem::path& raw_path);

void write_prediction(const std::filesystem::path& raw_path, const Prediction& prediction);

/// Throws Truncated (size not a multiple of 4 or shorter than the sidecar says),
/// LabelOutOfRange, SchemaMismatch (bad sidecar) or IoFailure.
Prediction read_prediction(const std::filesystem::path& raw_path);

/// Per-point feature vectors: n x dim float32 LE, row-major, with sidecar
/// {"n_points", "dim"}.
struct PointFeatures {
    std::size_t n_points = 0;
    std::size_t dim = 0;
    std::vector<double> values;
};

void write_point_features(const std::filesystem::path& raw_path, const PointFeatures& features);
PointFeatures read_point_features(const std::filesystem::path& raw_path);

} // namespace splatbench::io
