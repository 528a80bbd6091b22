// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/io/container.hpp"

#include "bytes.hpp"
#include "splatbench/error.hpp"

#include <cmath>
#include <fstream>
#include <iterator>

namespace splatbench::io {

std::size_t container_size(std::size_t n_points, bool with_labels) noexcept {
    return kCloudHeaderSize + 12 * n_points + (with_labels ? 4 * n_points : 0);
}

std::vector<std::uint8_t> encode_cloud(const LabeledCloud& cloud, bool with_labels) {
    if (cloud.points.size() != cloud.labels.size()) {
        throw Error(ErrorCode::InvalidCloud, "length mismatch between points and labels");
    }
    if (cloud.size() > 0xffffffffu) {
        throw Error(ErrorCode::InvalidCloud, "too many points for a u32 count");
    }
    std::vector<std::uint8_t> out;
    out.reserve(container_size(cloud.size(), with_labels));
    out.insert(out.end(), kCloudMagic.begin(), kCloudMagic.end());
    detail::put_u32(out, kCloudVersion);
    detail::put_u32(out, static_cast<std::uint32_t>(cloud.size()));
    detail::put_u32(out, with_labels ? kFlagLabels : 0u);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (const double c : cloud.points[i]) {
            if (!std::isfinite(c)) {
                throw Error(ErrorCode::InvalidCloud, "non-finite coordinate at index " + std::to_string(i));
            }
            detail::put_f32(out, static_cast<float>(c));
        }
    }
    if (with_labels) {
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const double y = cloud.labels[i];
            if (!(y >= 0.0 && y <= 1.0)) {
                throw Error(ErrorCode::LabelOutOfRange, "label at index " + std::to_string(i));
            }
            detail::put_f32(out, static_cast<float>(y));
        }
    }
    return out;
}

LabeledCloud decode_cloud(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4) {
        throw Error(ErrorCode::Truncated, "file shorter than the magic");
    }
    for (std::size_t k = 0; k < kCloudMagic.size(); ++k) {
        if (bytes[k] != static_cast<std::uint8_t>(kCloudMagic[k])) {
            throw Error(ErrorCode::BadMagic, "not a PCAF container");
        }
    }
    if (bytes.size() < kCloudHeaderSize) {
        throw Error(ErrorCode::Truncated, "header needs 16 bytes, have " + std::to_string(bytes.size()));
    }
    const std::uint32_t version = detail::get_u32(bytes, 4);
    if (version == 0 || version > kCloudVersion) {
        throw Error(ErrorCode::UnsupportedVersion, "container version " + std::to_string(version));
    }
    const std::size_t n = detail::get_u32(bytes, 8);
    const std::uint32_t flags = detail::get_u32(bytes, 12);
    if ((flags & ~kFlagLabels) != 0) {
        throw Error(ErrorCode::SchemaMismatch, "unknown flag bits " + std::to_string(flags));
    }
    const bool with_labels = (flags & kFlagLabels) != 0;
    const std::size_t expected = container_size(n, with_labels);
    if (bytes.size() < expected) {
        throw Error(ErrorCode::Truncated,
                    "expected " + std::to_string(expected) + " bytes, have " + std::to_string(bytes.size()));
    }
    if (bytes.size() > expected) {
        throw Error(ErrorCode::SchemaMismatch, std::to_string(bytes.size() - expected) + " trailing bytes");
    }

    LabeledCloud cloud;
    cloud.points.resize(n);
    cloud.labels.assign(n, 0.0);
    std::size_t offset = kCloudHeaderSize;
    for (auto& p : cloud.points) {
        for (double& c : p) {
            c = detail::get_f32(bytes, offset);
            offset += 4;
        }
    }
    if (with_labels) {
        for (std::size_t i = 0; i < n; ++i) {
            const double y = detail::get_f32(bytes, offset);
            offset += 4;
            if (!(y >= 0.0 && y <= 1.0)) {
                throw Error(ErrorCode::LabelOutOfRange, "label at index " + std::to_string(i));
            }
            cloud.labels[i] = y;
        }
    }
    return cloud;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error(ErrorCode::IoFailure, "short write to " + path.string());
    }
}

void write_cloud(const std::filesystem::path& path, const LabeledCloud& cloud, bool with_labels) {
    write_file_bytes(path, encode_cloud(cloud, with_labels));
}

LabeledCloud read_cloud(const std::filesystem::path& path) {
    try {
        return decode_cloud(read_file_bytes(path));
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.detail());
    }
}

} // namespace splatbench::io
