// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/splat/gaussians.hpp"

#include "splatbench/error.hpp"

#include <algorithm>
#include <cmath>

namespace splatbench {

namespace {

void check_parameters(double iso_scale, double opacity) {
    if (!(iso_scale > 0.0) || !std::isfinite(iso_scale)) {
        throw Error(ErrorCode::InvalidConfig, "iso_scale must be positive");
    }
    if (!(opacity > 0.0 && opacity <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "opacity must lie in (0, 1]");
    }
}

} // namespace

GaussianSet init_gaussians(const LabeledCloud& cloud, const GaussianOptions& options) {
    check_parameters(options.iso_scale, options.opacity);
    require_valid(cloud);

    const std::size_t n = cloud.size();
    GaussianSet g;
    g.means = cloud.points;
    g.scales.assign(n, options.iso_scale);
    g.opacities.assign(n, options.opacity);
    g.color_channels = 1;
    switch (options.color_mode) {
    case ColorMode::Affordance:
        g.colors = cloud.labels;
        break;
    case ColorMode::Constant:
        g.colors.assign(n, options.constant_color);
        break;
    case ColorMode::DepthShaded: {
        const Vec3 c = centroid(cloud.points);
        const double radius = bounding_radius(cloud.points);
        g.colors.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            g.colors[i] = radius > 0.0 ? std::clamp(1.0 - norm(cloud.points[i] - c) / radius, 0.0, 1.0) : 1.0;
        }
        break;
    }
    }
    return g;
}

void attach_features(GaussianSet& gaussians, std::span<const double> features, std::size_t dim) {
    if (dim == 0 || features.size() != gaussians.size() * dim) {
        throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(gaussians.size()) + " x " +
                                                      std::to_string(dim) + " features, got " +
                                                      std::to_string(features.size()) + " values");
    }
    gaussians.feature_dim = dim;
    gaussians.features.assign(features.begin(), features.end());
}

void validate_gaussians(const GaussianSet& g) {
    const std::size_t n = g.size();
    if (g.scales.size() != n || g.opacities.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "scales/opacities do not match the number of means");
    }
    if (g.color_channels == 0 || g.colors.size() != n * g.color_channels) {
        throw Error(ErrorCode::DimensionMismatch, "colors do not match the number of means");
    }
    if (g.features.size() != n * g.feature_dim) {
        throw Error(ErrorCode::DimensionMismatch, "features do not match the number of means");
    }
    for (std::size_t i = 0; i < n; ++i) {
        check_parameters(g.scales[i], g.opacities[i]);
        for (const double x : g.means[i]) {
            if (!std::isfinite(x)) {
                throw Error(ErrorCode::InvalidConfig, "non-finite mean at index " + std::to_string(i));
            }
        }
    }
}

} // namespace splatbench
