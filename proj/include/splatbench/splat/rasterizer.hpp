// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "splatbench/cloud.hpp"
#include "splatbench/splat/camera.hpp"
#include "splatbench/splat/gaussians.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace splatbench {

inline constexpr std::size_t kTileSize = 16;
/// Footprint cutoff: Gaussians contribute only where the squared Mahalanobis
/// distance is at most 3^2.
inline constexpr double kMaxMahalanobisSq = 9.0;
/// Means closer than this to the camera plane are culled.
inline constexpr double kNearPlane = 0.01;

struct RenderOptions {
    unsigned threads = 0;
    /// Compositing stops adding Gaussians once transmittance drops below this.
    /// 0 composites every Gaussian.
    double min_transmittance = 1e-4;
};

/// Planar images: color is V x C x H x W, depth and alpha V x H x W,
/// feature V x D x H x W (empty when the Gaussians carry no features).
struct RenderedViews {
    std::size_t views = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t color_channels = 1;
    std::size_t feature_dim = 0;
    std::vector<double> color;
    std::vector<double> depth;
    std::vector<double> alpha;
    std::vector<double> feature;

    std::size_t pixels() const noexcept { return height * width; }
};

/// Front-to-back accumulation for one pixel.
struct BlendState {
    double transmittance = 1.0;
    double alpha = 0.0;

    /// Adds one layer of opacity a; returns its blending weight a * T.
    double add(double a) noexcept {
        const double w = a * transmittance;
        transmittance *= 1.0 - a;
        alpha = 1.0 - transmittance;
        return w;
    }
};

/// Accumulated alpha of a front-to-back sequence with no cutoff.
double composite_alpha(std::span<const double> alphas) noexcept;

/// A Gaussian projected into one view.
struct Splat2D {
    std::size_t index = 0; // into the GaussianSet
    double u = 0.0;        // pixel coordinates of the projected mean
    double v = 0.0;
    double depth = 0.0;    // view-space z of the mean
    double conic_a = 0.0;  // inverse 2D covariance [[a, b], [b, c]]
    double conic_b = 0.0;
    double conic_c = 0.0;
    double radius = 0.0;   // 3 * sqrt(largest eigenvalue), in pixels
};

/// Projects every Gaussian in front of the near plane and returns them sorted by
/// depth, ties by index. Uses the closed form s^2 J J^T for the 2D covariance.
std::vector<Splat2D> project_gaussians(const GaussianSet& gaussians, const Pose& pose, const Intrinsics& intrinsics);

/// Tile-based renderer: 16x16 tiles, per-tile binning, early exit per pixel.
RenderedViews rasterize(const GaussianSet& gaussians, const CameraRig& rig, const RenderOptions& options = {});

/// Brute-force renderer: every pixel visits every Gaussian, covariance projected
/// as J W Sigma W^T J^T with explicit matrices, no tiling and no early exit.
RenderedViews reference_rasterize(const GaussianSet& gaussians, const CameraRig& rig,
                                  const RenderOptions& options = {});

/// V x H x W grayscale masks from the cloud's affordance labels.
std::vector<double> render_affordance_masks(const LabeledCloud& cloud, const CameraRig& rig, double iso_scale,
                                            double opacity, const RenderOptions& options = {});

/// Renders per-point features (N x dim, row-major). Throws Error(DimensionMismatch).
RenderedViews splat_features(const LabeledCloud& cloud, std::span<const double> features, std::size_t dim,
                             const CameraRig& rig, const GaussianOptions& gaussian_options = {},
                             const RenderOptions& options = {});

} // namespace splatbench
