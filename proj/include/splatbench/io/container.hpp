// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "splatbench/cloud.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace splatbench::io {

/*
 * Cloud container, all fields little-endian:
 *
 *   offset  size  field
 *   0       4     magic "PCAF"
 *   4       4     version (u32, currently 1)
 *   8       4     n_points (u32)
 *   12      4     flags (u32, bit 0 = labels present)
 *   16      12n   x, y, z float32 per point
 *   16+12n  4n    label float32 per point, when bit 0 is set
 *
 * Coordinates and labels are rounded to float32 on write.
 */
inline constexpr std::array<char, 4> kCloudMagic{'P', 'C', 'A', 'F'};
inline constexpr std::uint32_t kCloudVersion = 1;
inline constexpr std::uint32_t kFlagLabels = 1u;
inline constexpr std::size_t kCloudHeaderSize = 16;

std::size_t container_size(std::size_t n_points, bool with_labels) noexcept;

/// Throws Error(InvalidCloud) for non-finite coordinates or mismatched lengths
/// and Error(LabelOutOfRange) for labels outside [0, 1].
std::vector<std::uint8_t> encode_cloud(const LabeledCloud& cloud, bool with_labels = true);

/// Throws BadMagic, UnsupportedVersion, Truncated, SchemaMismatch (unknown flags
/// or trailing bytes) or LabelOutOfRange. Missing labels decode as zeros.
LabeledCloud decode_cloud(std::span<const std::uint8_t> bytes);

void write_cloud(const std::filesystem::path& path, const LabeledCloud& cloud, bool with_labels = true);
LabeledCloud read_cloud(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

} // namespace splatbench::io
