// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace splatbench {

enum class DepthColormap {
    Grayscale,        // near dark, far bright
    GrayscaleInverse, // near bright, far dark
    Turbo,            // shipped 256-entry table, near blue, far red
};

std::string_view to_string(DepthColormap mode);
std::optional<DepthColormap> parse_depth_colormap(std::string_view name);

inline constexpr double kValidAlpha = 1e-3;

struct ColormapResult {
    std::vector<double> images;     // V x 3 x H x W
    std::vector<bool> all_invalid;  // per view: no pixel had alpha > kValidAlpha
};

/// Entry of the turbo table nearest to t in [0, 1].
std::array<double, 3> turbo(double t);

/// Per view, valid depths are min/max normalized; a view with a single depth
/// value maps to 0.5. Invalid pixels are black. Throws Error(InvalidConfig)
/// for non-finite depths or mismatched buffer sizes.
ColormapResult colormap_depth(std::span<const double> depth, std::span<const double> alpha, std::size_t views,
                              std::size_t height, std::size_t width, DepthColormap mode);

} // namespace splatbench
