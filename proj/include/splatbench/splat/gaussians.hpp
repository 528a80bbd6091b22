// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "splatbench/cloud.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace splatbench {

/// Isotropic Gaussian primitives. Colors and features are stored row-major,
/// one row of color_channels (feature_dim) values per Gaussian.
struct GaussianSet {
    std::vector<Vec3> means;
    std::vector<double> scales;
    std::vector<double> opacities;
    std::size_t color_channels = 1;
    std::vector<double> colors;
    std::size_t feature_dim = 0;
    std::vector<double> features;

    std::size_t size() const noexcept { return means.size(); }
};

enum class ColorMode {
    Affordance,  // c = label
    Constant,    // c = constant_color
    DepthShaded, // c = 1 - distance from centroid / bounding radius
};

struct GaussianOptions {
    double iso_scale = 0.02;
    double opacity = 0.9;
    ColorMode color_mode = ColorMode::Affordance;
    double constant_color = 1.0;
};

/// Throws Error(InvalidConfig) for iso_scale <= 0 or opacity outside (0, 1],
/// and Error(InvalidCloud) for an invalid cloud.
GaussianSet init_gaussians(const LabeledCloud& cloud, const GaussianOptions& options = {});

/// Throws Error(DimensionMismatch) unless features.size() == size() * dim.
void attach_features(GaussianSet& gaussians, std::span<const double> features, std::size_t dim);

/// Throws Error(InvalidConfig) or Error(DimensionMismatch) on broken invariants.
void validate_gaussians(const GaussianSet& gaussians);

} // namespace splatbench
