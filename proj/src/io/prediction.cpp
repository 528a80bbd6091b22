// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/io/prediction.hpp"

#include "bytes.hpp"
#include "splatbench/error.hpp"
#include "splatbench/io/container.hpp"

#include <json.hpp>

namespace splatbench::io {

std::filesystem::path sidecar_path(const std::filesystem::path& raw_path) {
    auto sidecar = raw_path;
    sidecar.replace_extension(".json");
    return sidecar;
}

void write_prediction(const std::filesystem::path& raw_path, const Prediction& prediction) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(4 * prediction.scores.size());
    for (std::size_t i = 0; i < prediction.scores.size(); ++i) {
        const double s = prediction.scores[i];
        if (!(s >= 0.0 && s <= 1.0)) {
            throw Error(ErrorCode::LabelOutOfRange, "score at index " + std::to_string(i));
        }
        detail::put_f32(bytes, static_cast<float>(s));
    }
    write_file_bytes(raw_path, bytes);

    nlohmann::ordered_json meta;
    meta["sample_id"] = prediction.sample_id;
    meta["model_name"] = prediction.model_name;
    meta["n_points"] = prediction.scores.size();
    const std::string text = meta.dump() + "\n";
    write_file_bytes(sidecar_path(raw_path), std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Prediction read_prediction(const std::filesystem::path& raw_path) {
    Prediction prediction;
    const auto meta_bytes = read_file_bytes(sidecar_path(raw_path));
    std::size_t expected_points = 0;
    try {
        const auto meta = nlohmann::json::parse(meta_bytes.begin(), meta_bytes.end());
        prediction.sample_id = meta.at("sample_id").get<std::uint64_t>();
        prediction.model_name = meta.value("model_name", std::string{});
        expected_points = meta.value("n_points", std::size_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, sidecar_path(raw_path).string() + ": " + e.what());
    }

    const auto bytes = read_file_bytes(raw_path);
    if (bytes.size() % 4 != 0) {
        throw Error(ErrorCode::Truncated, raw_path.string() + ": size is not a multiple of 4");
    }
    const std::size_t n = bytes.size() / 4;
    if (expected_points != 0 && n != expected_points) {
        throw Error(ErrorCode::Truncated, raw_path.string() + ": sidecar says " + std::to_string(expected_points) +
                                              " scores, file has " + std::to_string(n));
    }
    prediction.scores.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = detail::get_f32(bytes, 4 * i);
        if (!(s >= 0.0 && s <= 1.0)) {
            throw Error(ErrorCode::LabelOutOfRange, raw_path.string() + ": score at index " + std::to_string(i));
        }
        prediction.scores[i] = s;
    }
    return prediction;
}

void write_point_features(const std::filesystem::path& raw_path, const PointFeatures& features) {
    if (features.values.size() != features.n_points * features.dim) {
        throw Error(ErrorCode::DimensionMismatch, "feature buffer does not match n_points x dim");
    }
    std::vector<std::uint8_t> bytes;
    bytes.reserve(4 * features.values.size());
    for (const double v : features.values) {
        detail::put_f32(bytes, static_cast<float>(v));
    }
    write_file_bytes(raw_path, bytes);

    nlohmann::ordered_json meta;
    meta["n_points"] = features.n_points;
    meta["dim"] = features.dim;
    const std::string text = meta.dump() + "\n";
    write_file_bytes(sidecar_path(raw_path), std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

PointFeatures read_point_features(const std::filesystem::path& raw_path) {
    PointFeatures features;
    const auto meta_bytes = read_file_bytes(sidecar_path(raw_path));
    try {
        const auto meta = nlohmann::json::parse(meta_bytes.begin(), meta_bytes.end());
        features.n_points = meta.at("n_points").get<std::size_t>();
        features.dim = meta.at("dim").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, sidecar_path(raw_path).string() + ": " + e.what());
    }
    const auto bytes = read_file_bytes(raw_path);
    const std::size_t n = features.n_points * features.dim;
    if (bytes.size() != 4 * n) {
        throw Error(ErrorCode::Truncated, raw_path.string() + ": size does not match sidecar");
    }
    features.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        features.values[i] = detail::get_f32(bytes, 4 * i);
    }
    return features;
}

} // namespace splatbench::io
