// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/io/image.hpp"

#include "bytes.hpp"
#include "splatbench/error.hpp"
#include "splatbench/io/container.hpp"
#include "splatbench/io/prediction.hpp"

#include <json.hpp>
#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

namespace splatbench::io {

namespace {

std::uint8_t to_byte(float v) {
    const float clamped = std::clamp(std::isfinite(v) ? v : 0.0f, 0.0f, 1.0f);
    return static_cast<std::uint8_t>(std::lround(clamped * 255.0f));
}

void write_png(const std::filesystem::path& path, const std::vector<std::uint8_t>& rows, std::size_t height,
               std::size_t width, int color_type, std::size_t channels) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "wb"), &std::fclose);
    if (!file) {
        throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    }
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw Error(ErrorCode::IoFailure, "libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error(ErrorCode::IoFailure, "libpng failed writing " + path.string());
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (std::size_t y = 0; y < height; ++y) {
        png_write_row(png, const_cast<png_bytep>(rows.data() + y * width * channels));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace

void write_raw_image(const std::filesystem::path& raw_path, std::span<const float> planes, const RawImageInfo& info) {
    if (planes.size() != info.channels * info.height * info.width) {
        throw Error(ErrorCode::DimensionMismatch, "image buffer does not match channels x H x W");
    }
    std::vector<std::uint8_t> bytes;
    bytes.reserve(4 * planes.size());
    for (const float v : planes) {
        detail::put_f32(bytes, v);
    }
    write_file_bytes(raw_path, bytes);

    nlohmann::ordered_json meta;
    meta["view"] = info.view;
    meta["H"] = info.height;
    meta["W"] = info.width;
    meta["channels"] = info.channels;
    const std::string text = meta.dump() + "\n";
    write_file_bytes(sidecar_path(raw_path), std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

RawImage read_raw_image(const std::filesystem::path& raw_path) {
    RawImage image;
    const auto meta_bytes = read_file_bytes(sidecar_path(raw_path));
    try {
        const auto meta = nlohmann::json::parse(meta_bytes.begin(), meta_bytes.end());
        image.info.view = meta.at("view").get<std::size_t>();
        image.info.height = meta.at("H").get<std::size_t>();
        image.info.width = meta.at("W").get<std::size_t>();
        image.info.channels = meta.at("channels").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, sidecar_path(raw_path).string() + ": " + e.what());
    }
    const auto bytes = read_file_bytes(raw_path);
    const std::size_t n = image.info.channels * image.info.height * image.info.width;
    if (bytes.size() != 4 * n) {
        throw Error(ErrorCode::Truncated, raw_path.string() + ": size does not match sidecar");
    }
    image.planes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        image.planes[i] = detail::get_f32(bytes, 4 * i);
    }
    return image;
}

void write_png_gray(const std::filesystem::path& path, std::span<const float> pixels, std::size_t height,
                    std::size_t width) {
    if (pixels.size() != height * width) {
        throw Error(ErrorCode::DimensionMismatch, "gray image buffer does not match H x W");
    }
    std::vector<std::uint8_t> rows(pixels.size());
    std::transform(pixels.begin(), pixels.end(), rows.begin(), to_byte);
    write_png(path, rows, height, width, PNG_COLOR_TYPE_GRAY, 1);
}

void write_png_rgb(const std::filesystem::path& path, std::span<const float> planes, std::size_t height,
                   std::size_t width) {
    const std::size_t plane = height * width;
    if (planes.size() != 3 * plane) {
        throw Error(ErrorCode::DimensionMismatch, "rgb image buffer does not match 3 x H x W");
    }
    std::vector<std::uint8_t> rows(3 * plane);
    for (std::size_t px = 0; px < plane; ++px) {
        for (std::size_t c = 0; c < 3; ++c) {
            rows[3 * px + c] = to_byte(planes[c * plane + px]);
        }
    }
    write_png(path, rows, height, width, PNG_COLOR_TYPE_RGB, 3);
}

} // namespace splatbench::io
