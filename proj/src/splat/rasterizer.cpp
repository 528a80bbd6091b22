// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/splat/rasterizer.hpp"

#include "splatbench/error.hpp"
#include "splatbench/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace splatbench {

namespace {

RenderedViews allocate(const GaussianSet& g, const CameraRig& rig) {
    RenderedViews out;
    out.views = rig.views();
    out.height = rig.intrinsics.height;
    out.width = rig.intrinsics.width;
    out.color_channels = g.color_channels;
    out.feature_dim = g.feature_dim;
    const std::size_t plane = out.views * out.pixels();
    out.color.assign(plane * out.color_channels, 0.0);
    out.depth.assign(plane, 0.0);
    out.alpha.assign(plane, 0.0);
    out.feature.assign(plane * out.feature_dim, 0.0);
    return out;
}

// Accumulates one Gaussian into the output pixel at (view, px).
struct PixelWriter {
    const GaussianSet& g;
    RenderedViews& out;

    void blend(std::size_t view, std::size_t px, std::size_t index, double weight, double depth) const {
        const std::size_t plane = out.pixels();
        const std::size_t c_count = g.color_channels;
        for (std::size_t c = 0; c < c_count; ++c) {
            out.color[(view * c_count + c) * plane + px] += weight * g.colors[index * c_count + c];
        }
        const std::size_t d_count = g.feature_dim;
        for (std::size_t d = 0; d < d_count; ++d) {
            out.feature[(view * d_count + d) * plane + px] += weight * g.features[index * d_count + d];
        }
        out.depth[view * plane + px] += weight * depth;
    }
};

double mahalanobis_sq(const Splat2D& s, double px, double py) {
    const double dx = px - s.u;
    const double dy = py - s.v;
    return s.conic_a * dx * dx + 2.0 * s.conic_b * dx * dy + s.conic_c * dy * dy;
}

// Pixel index range [lo, hi) whose centers may fall within `radius` of `center`,
// padded by one pixel and clamped to [0, limit).
std::pair<std::size_t, std::size_t> pixel_span(double center, double radius, std::size_t limit) {
    const double lo = std::floor(center - radius - 1.5);
    const double hi = std::ceil(center + radius + 0.5) + 1.0;
    const double max = static_cast<double>(limit);
    return {static_cast<std::size_t>(std::clamp(lo, 0.0, max)), static_cast<std::size_t>(std::clamp(hi, 0.0, max))};
}

void render_view_tile(const GaussianSet& g, const std::vector<Splat2D>& splats, const std::vector<std::uint32_t>& list,
                      std::size_t view, std::size_t x0, std::size_t y0, const RenderOptions& options,
                      RenderedViews& out) {
    const PixelWriter writer{g, out};
    const std::size_t x1 = std::min(x0 + kTileSize, out.width);
    const std::size_t y1 = std::min(y0 + kTileSize, out.height);
    for (std::size_t y = y0; y < y1; ++y) {
        for (std::size_t x = x0; x < x1; ++x) {
            const double px = static_cast<double>(x) + 0.5;
            const double py = static_cast<double>(y) + 0.5;
            const std::size_t pixel = y * out.width + x;
            BlendState state;
            for (const std::uint32_t k : list) {
                if (state.transmittance < options.min_transmittance) {
                    break;
                }
                const Splat2D& s = splats[k];
                const double q = mahalanobis_sq(s, px, py);
                if (!(q <= kMaxMahalanobisSq)) {
                    continue;
                }
                const double w = state.add(g.opacities[s.index] * std::exp(-0.5 * q));
                writer.blend(view, pixel, s.index, w, s.depth);
            }
            out.alpha[view * out.pixels() + pixel] = state.alpha;
        }
    }
}

} // namespace

double composite_alpha(std::span<const double> alphas) noexcept {
    BlendState state;
    for (const double a : alphas) {
        state.add(a);
    }
    return state.alpha;
}

std::vector<Splat2D> project_gaussians(const GaussianSet& g, const Pose& pose, const Intrinsics& k) {
    std::vector<Splat2D> splats;
    splats.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3 p = pose.to_view(g.means[i]);
        const double z = p[2];
        if (!(z > kNearPlane)) {
            continue;
        }
        const double inv_z = 1.0 / z;
        const double s2 = g.scales[i] * g.scales[i];
        // Jacobian rows: (fx/z, 0, -fx x/z^2) and (0, fy/z, -fy y/z^2).
        const double j00 = k.fx * inv_z;
        const double j02 = -k.fx * p[0] * inv_z * inv_z;
        const double j11 = k.fy * inv_z;
        const double j12 = -k.fy * p[1] * inv_z * inv_z;
        const double a = s2 * (j00 * j00 + j02 * j02);
        const double b = s2 * (j02 * j12);
        const double c = s2 * (j11 * j11 + j12 * j12);
        const double det = a * c - b * b;
        if (!(det > 0.0) || !std::isfinite(det)) {
            continue;
        }
        const double mid = 0.5 * (a + c);
        const double lambda_max = mid + std::sqrt(std::max(mid * mid - det, 0.0));

        Splat2D s;
        s.index = i;
        s.u = k.fx * p[0] * inv_z + k.cx;
        s.v = k.fy * p[1] * inv_z + k.cy;
        s.depth = z;
        s.conic_a = c / det;
        s.conic_b = -b / det;
        s.conic_c = a / det;
        s.radius = 3.0 * std::sqrt(lambda_max);
        if (!std::isfinite(s.u) || !std::isfinite(s.v) || !std::isfinite(s.radius)) {
            continue;
        }
        splats.push_back(s);
    }
    std::sort(splats.begin(), splats.end(), [](const Splat2D& l, const Splat2D& r) {
        return l.depth != r.depth ? l.depth < r.depth : l.index < r.index;
    });
    return splats;
}

RenderedViews rasterize(const GaussianSet& g, const CameraRig& rig, const RenderOptions& options) {
    validate_gaussians(g);
    RenderedViews out = allocate(g, rig);
    const std::size_t tiles_x = (out.width + kTileSize - 1) / kTileSize;
    const std::size_t tiles_y = (out.height + kTileSize - 1) / kTileSize;
    const std::size_t tiles = tiles_x * tiles_y;

    // Projection and binning, one view per work item. Splats are visited in
    // depth order, so every tile list comes out sorted.
    std::vector<std::vector<Splat2D>> splats(out.views);
    std::vector<std::vector<std::vector<std::uint32_t>>> bins(out.views);
    parallel_for(out.views, options.threads, [&](std::size_t view) {
        splats[view] = project_gaussians(g, rig.poses[view], rig.intrinsics);
        auto& view_bins = bins[view];
        view_bins.assign(tiles, {});
        for (std::size_t k = 0; k < splats[view].size(); ++k) {
            const Splat2D& s = splats[view][k];
            const auto [px0, px1] = pixel_span(s.u, s.radius, out.width);
            const auto [py0, py1] = pixel_span(s.v, s.radius, out.height);
            if (px0 >= px1 || py0 >= py1) {
                continue;
            }
            for (std::size_t ty = py0 / kTileSize; ty <= (py1 - 1) / kTileSize; ++ty) {
                for (std::size_t tx = px0 / kTileSize; tx <= (px1 - 1) / kTileSize; ++tx) {
                    view_bins[ty * tiles_x + tx].push_back(static_cast<std::uint32_t>(k));
                }
            }
        }
    });

    parallel_for(out.views * tiles, options.threads, [&](std::size_t item) {
        const std::size_t view = item / tiles;
        const std::size_t tile = item % tiles;
        render_view_tile(g, splats[view], bins[view][tile], view, (tile % tiles_x) * kTileSize,
                         (tile / tiles_x) * kTileSize, options, out);
    });
    return out;
}

RenderedViews reference_rasterize(const GaussianSet& g, const CameraRig& rig, const RenderOptions& options) {
    validate_gaussians(g);
    RenderedViews out = allocate(g, rig);
    const Intrinsics& k = rig.intrinsics;
    const PixelWriter writer{g, out};

    struct Item {
        std::size_t index;
        double depth, u, v;
        double inv[2][2];
    };

    parallel_for(out.views, options.threads, [&](std::size_t view) {
        const Pose& pose = rig.poses[view];
        std::vector<Item> items;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Vec3 p = pose.to_view(g.means[i]);
            if (!(p[2] > kNearPlane)) {
                continue;
            }
            const double z = p[2];
            const double jac[2][3] = {{k.fx / z, 0.0, -k.fx * p[0] / (z * z)},
                                      {0.0, k.fy / z, -k.fy * p[1] / (z * z)}};
            // Sigma_view = W (s^2 I) W^T
            double sigma_view[3][3] = {};
            const double s2 = g.scales[i] * g.scales[i];
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) {
                    for (int m = 0; m < 3; ++m) {
                        sigma_view[r][c] += pose.rotation[r][m] * s2 * pose.rotation[c][m];
                    }
                }
            }
            double cov[2][2] = {};
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    for (int m = 0; m < 3; ++m) {
                        for (int n = 0; n < 3; ++n) {
                            cov[r][c] += jac[r][m] * sigma_view[m][n] * jac[c][n];
                        }
                    }
                }
            }
            const double det = cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0];
            if (!(det > 0.0) || !std::isfinite(det)) {
                continue;
            }
            Item item{i, z, k.fx * p[0] / z + k.cx, k.fy * p[1] / z + k.cy, {}};
            item.inv[0][0] = cov[1][1] / det;
            item.inv[0][1] = -cov[0][1] / det;
            item.inv[1][0] = -cov[1][0] / det;
            item.inv[1][1] = cov[0][0] / det;
            if (!std::isfinite(item.u) || !std::isfinite(item.v)) {
                continue;
            }
            items.push_back(item);
        }
        std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.depth < b.depth; });

        for (std::size_t y = 0; y < out.height; ++y) {
            for (std::size_t x = 0; x < out.width; ++x) {
                const double d[2] = {static_cast<double>(x) + 0.5, static_cast<double>(y) + 0.5};
                const std::size_t pixel = y * out.width + x;
                BlendState state;
                for (const Item& item : items) {
                    const double e[2] = {d[0] - item.u, d[1] - item.v};
                    double q = 0.0;
                    for (int r = 0; r < 2; ++r) {
                        for (int c = 0; c < 2; ++c) {
                            q += e[r] * item.inv[r][c] * e[c];
                        }
                    }
                    if (!(q <= kMaxMahalanobisSq) || state.transmittance < options.min_transmittance) {
                        continue;
                    }
                    const double w = state.add(g.opacities[item.index] * std::exp(-0.5 * q));
                    writer.blend(view, pixel, item.index, w, item.depth);
                }
                out.alpha[view * out.pixels() + pixel] = state.alpha;
            }
        }
    });
    return out;
}

std::vector<double> render_affordance_masks(const LabeledCloud& cloud, const CameraRig& rig, double iso_scale,
                                            double opacity, const RenderOptions& options) {
    GaussianOptions gaussian_options;
    gaussian_options.iso_scale = iso_scale;
    gaussian_options.opacity = opacity;
    gaussian_options.color_mode = ColorMode::Affordance;
    return rasterize(init_gaussians(cloud, gaussian_options), rig, options).color;
}

RenderedViews splat_features(const LabeledCloud& cloud, std::span<const double> features, std::size_t dim,
                             const CameraRig& rig, const GaussianOptions& gaussian_options,
                             const RenderOptions& options) {
    GaussianSet g = init_gaussians(cloud, gaussian_options);
    attach_features(g, features, dim);
    return rasterize(g, rig, options);
}

} // namespace splatbench
