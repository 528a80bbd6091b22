// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace splatbench::io {

struct RawImageInfo {
    std::size_t view = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t channels = 1;

    friend bool operator==(const RawImageInfo&, const RawImageInfo&) = default;
};

/// Planar float32 LE dump (channels x height x width) plus a JSON sidecar
/// {"view", "H", "W", "channels"} next to it with the .json extension.
void write_raw_image(const std::filesystem::path& raw_path, std::span<const float> planes, const RawImageInfo& info);

struct RawImage {
    RawImageInfo info;
    std::vector<float> planes;
};

RawImage read_raw_image(const std::filesystem::path& raw_path);

/// 8-bit PNG for inspection. Values are clamped to [0, 1] and scaled by 255.
void write_png_gray(const std::filesystem::path& path, std::span<const float> pixels, std::size_t height,
                    std::size_t width);
/// `planes` is 3 x height x width.
void write_png_rgb(const std::filesystem::path& path, std::span<const float> planes, std::size_t height,
                   std::size_t width);

} // namespace splatbench::io
