// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/splat/colormap.hpp"

#include "splatbench/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace splatbench {

namespace {

constexpr double kTurboTable[256][3] = {
#include "turbo_lut.inc"
};

} // namespace

std::string_view to_string(DepthColormap mode) {
    switch (mode) {
    case DepthColormap::Grayscale: return "grayscale";
    case DepthColormap::GrayscaleInverse: return "grayscale-inverse";
    case DepthColormap::Turbo: return "turbo";
    }
    return "unknown";
}

std::optional<DepthColormap> parse_depth_colormap(std::string_view name) {
    for (const auto mode : {DepthColormap::Grayscale, DepthColormap::GrayscaleInverse, DepthColormap::Turbo}) {
        if (name == to_string(mode)) {
            return mode;
        }
    }
    if (name == "gray") return DepthColormap::Grayscale;
    if (name == "gray-inverse" || name == "inverse") return DepthColormap::GrayscaleInverse;
    return std::nullopt;
}

std::array<double, 3> turbo(double t) {
    const double clamped = std::isfinite(t) ? std::clamp(t, 0.0, 1.0) : 0.0;
    const auto i = static_cast<std::size_t>(std::lround(clamped * 255.0));
    return {kTurboTable[i][0], kTurboTable[i][1], kTurboTable[i][2]};
}

ColormapResult colormap_depth(std::span<const double> depth, std::span<const double> alpha, std::size_t views,
                              std::size_t height, std::size_t width, DepthColormap mode) {
    const std::size_t plane = height * width;
    if (depth.size() != views * plane || alpha.size() != views * plane) {
        throw Error(ErrorCode::InvalidConfig, "depth/alpha buffers do not match V x H x W");
    }
    ColormapResult result;
    result.images.assign(views * 3 * plane, 0.0);
    result.all_invalid.assign(views, false);

    for (std::size_t v = 0; v < views; ++v) {
        const auto d = depth.subspan(v * plane, plane);
        const auto a = alpha.subspan(v * plane, plane);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        bool any = false;
        for (std::size_t px = 0; px < plane; ++px) {
            if (!std::isfinite(d[px])) {
                throw Error(ErrorCode::InvalidConfig, "non-finite depth in view " + std::to_string(v));
            }
            if (a[px] > kValidAlpha) {
                lo = std::min(lo, d[px]);
                hi = std::max(hi, d[px]);
                any = true;
            }
        }
        if (!any) {
            result.all_invalid[v] = true;
            continue;
        }
        double* out = result.images.data() + v * 3 * plane;
        for (std::size_t px = 0; px < plane; ++px) {
            if (!(a[px] > kValidAlpha)) {
                continue;
            }
            const double t = hi > lo ? (d[px] - lo) / (hi - lo) : 0.5;
            std::array<double, 3> rgb{};
            switch (mode) {
            case DepthColormap::Grayscale: rgb = {t, t, t}; break;
            case DepthColormap::GrayscaleInverse: rgb = {1.0 - t, 1.0 - t, 1.0 - t}; break;
            case DepthColormap::Turbo: rgb = turbo(t); break;
            }
            for (std::size_t c = 0; c < 3; ++c) {
                out[c * plane + px] = rgb[c];
            }
        }
    }
    return result;
}

} // namespace splatbench
