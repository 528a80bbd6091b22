// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/error.hpp"
#include "splatbench/splat/camera.hpp"
#include "splatbench/splat/colormap.hpp"
#include "splatbench/splat/gaussians.hpp"
#include "splatbench/splat/rasterizer.hpp"
#include "testing.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace splatbench;
using testutil::random_cloud;

namespace {

// Camera at the origin looking down +z with pixel (7, 7) centered on the axis.
CameraRig axis_rig(std::size_t size = 16) {
    CameraRig rig;
    Pose pose;
    pose.rotation = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    rig.poses.push_back(pose);
    rig.intrinsics = {40.0, 40.0, 7.5, 7.5, size, size};
    return rig;
}

GaussianSet single(const Vec3& mean, double opacity, double color, double scale = 0.05) {
    GaussianSet g;
    g.means = {mean};
    g.scales = {scale};
    g.opacities = {opacity};
    g.colors = {color};
    return g;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    EXPECT_EQ(a.size(), b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_diff(const RenderedViews& a, const RenderedViews& b) {
    return std::max({max_abs_diff(a.color, b.color), max_abs_diff(a.depth, b.depth), max_abs_diff(a.alpha, b.alpha),
                     max_abs_diff(a.feature, b.feature)});
}

std::size_t at(const RenderedViews& r, std::size_t x, std::size_t y) { return y * r.width + x; }

RigConfig small_config(std::size_t views = 4, std::size_t res = 40) {
    RigConfig c;
    c.views = views;
    c.resolution = res;
    return c;
}

} // namespace

TEST(Camera, DefaultRigHasSixViewsPerRing) {
    const auto rig = make_views(Vec3{0.1, 0.2, 0.3}, 1.0, RigConfig{});
    ASSERT_EQ(rig.views(), 12u);
    EXPECT_EQ(rig.intrinsics.width, 112u);
    EXPECT_EQ(rig.intrinsics.height, 112u);
    std::size_t upper = 0;
    for (const auto& pose : rig.poses) {
        const Vec3 c = pose.center();
        EXPECT_NEAR(norm(c - rig.target), 2.5, 1e-9);
        upper += c[1] > rig.target[1] ? 1 : 0;
    }
    EXPECT_EQ(upper, 6u);
}

TEST(Camera, OpticalAxisHitsCentroid) {
    const auto cloud = random_cloud(300, 4);
    RigConfig config;
    config.views = 7;
    config.elevations_deg = {60.0, 0.0, -45.0};
    const auto rig = make_views(cloud, config);
    const Vec3 c = centroid(cloud.points);
    for (const auto& pose : rig.poses) {
        const Vec3 v = pose.to_view(c);
        EXPECT_NEAR(v[0], 0.0, 1e-6);
        EXPECT_NEAR(v[1], 0.0, 1e-6);
        EXPECT_GT(v[2], 0.0);
    }
}

TEST(Camera, InvalidConfigs) {
    RigConfig c;
    c.views = 0;
    EXPECT_THROW(make_views(Vec3{}, 1.0, c), Error);
    c = {};
    c.radius_factor = 1.0;
    EXPECT_THROW(make_views(Vec3{}, 1.0, c), Error);
    c = {};
    c.resolution = 0;
    EXPECT_THROW(make_views(Vec3{}, 1.0, c), Error);
    c = {};
    c.elevations_deg = {};
    EXPECT_THROW(make_views(Vec3{}, 1.0, c), Error);
    c = {};
    c.fov_deg = 180.0;
    EXPECT_THROW(make_views(Vec3{}, 1.0, c), Error);
}

TEST(Gaussians, InitFromCloud) {
    const auto cloud = random_cloud(2048, 1);
    const auto g = init_gaussians(cloud);
    ASSERT_EQ(g.size(), 2048u);
    EXPECT_EQ(g.colors, cloud.labels);
    EXPECT_EQ(g.means, cloud.points);
    GaussianOptions o;
    o.iso_scale = 0.0;
    EXPECT_THROW(init_gaussians(cloud, o), Error);
    o = {};
    o.opacity = 1.5;
    EXPECT_THROW(init_gaussians(cloud, o), Error);
    o = {};
    o.color_mode = ColorMode::Constant;
    o.constant_color = 0.25;
    const auto c = init_gaussians(cloud, o);
    EXPECT_TRUE(std::all_of(c.colors.begin(), c.colors.end(), [](double v) { return v == 0.25; }));
}

TEST(Gaussians, FeatureDimensionMismatch) {
    auto g = init_gaussians(random_cloud(10, 1));
    const std::vector<double> features(25, 0.0);
    EXPECT_THROW(attach_features(g, features, 3), Error);
    EXPECT_NO_THROW(attach_features(g, std::span(features).first(20), 2));
}

TEST(Rasterize, SingleOpaqueGaussianAtPixelCenter) {
    const auto rig = axis_rig();
    const auto g = single({0.0, 0.0, 2.0}, 1.0, 0.7);
    const auto r = rasterize(g, rig);
    EXPECT_NEAR(r.color[at(r, 7, 7)], 0.7, 1e-12);
    EXPECT_NEAR(r.depth[at(r, 7, 7)], 2.0, 1e-12);
    EXPECT_NEAR(r.alpha[at(r, 7, 7)], 1.0, 1e-12);
    const auto ref = reference_rasterize(g, rig);
    EXPECT_LE(max_diff(r, ref), 1e-7);
}

TEST(Rasterize, TwoLayerBlend) {
    const auto rig = axis_rig();
    GaussianSet g = single({0.0, 0.0, 3.0}, 0.5, 0.0);
    g.means.push_back({0.0, 0.0, 2.0});
    g.scales.push_back(0.05);
    g.opacities.push_back(0.5);
    g.colors.push_back(1.0);
    const auto r = rasterize(g, rig);
    EXPECT_NEAR(r.color[at(r, 7, 7)], 0.5, 1e-12);
    EXPECT_NEAR(r.alpha[at(r, 7, 7)], 0.75, 1e-12);
    EXPECT_NEAR(r.depth[at(r, 7, 7)], 0.5 * 2.0 + 0.25 * 3.0, 1e-12);
}

TEST(Rasterize, EmptySetAndCulledGaussian) {
    const auto rig = axis_rig();
    const auto empty = reference_rasterize(GaussianSet{}, rig);
    EXPECT_TRUE(std::all_of(empty.alpha.begin(), empty.alpha.end(), [](double v) { return v == 0.0; }));
    EXPECT_TRUE(std::all_of(empty.color.begin(), empty.color.end(), [](double v) { return v == 0.0; }));
    const auto behind = rasterize(single({0.0, 0.0, -1.0}, 1.0, 1.0), rig);
    EXPECT_TRUE(std::all_of(behind.alpha.begin(), behind.alpha.end(), [](double v) { return v == 0.0; }));
}

TEST(Rasterize, MatchesReferenceOnRandomScenes) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto cloud = random_cloud(300, seed);
        const auto rig = make_views(cloud, small_config(5, 48));
        auto g = init_gaussians(cloud, {0.04, 0.8, ColorMode::Affordance, 1.0});
        std::mt19937_64 gen(seed);
        attach_features(g, testutil::random_scores(300 * 3, gen), 3);
        EXPECT_LE(max_diff(rasterize(g, rig), reference_rasterize(g, rig)), 1e-5) << seed;
    }
}

TEST(Rasterize, AlphaStaysInUnitInterval) {
    const auto cloud = random_cloud(2000, 9, 0.3);
    const auto rig = make_views(cloud, small_config(3, 32));
    const auto r = rasterize(init_gaussians(cloud, {0.05, 1.0, ColorMode::Affordance, 1.0}), rig);
    for (const double a : r.alpha) {
        EXPECT_GE(a, 0.0);
        EXPECT_LE(a, 1.0);
    }
}

TEST(Rasterize, PermutationInvariant) {
    const auto cloud = random_cloud(400, 5);
    const auto rig = make_views(cloud, small_config(3, 40));
    LabeledCloud shuffled = cloud;
    std::vector<std::size_t> order(cloud.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), std::mt19937_64(3));
    for (std::size_t i = 0; i < order.size(); ++i) {
        shuffled.points[i] = cloud.points[order[i]];
        shuffled.labels[i] = cloud.labels[order[i]];
    }
    const auto a = rasterize(init_gaussians(cloud), rig);
    const auto b = rasterize(init_gaussians(shuffled), rig);
    EXPECT_LE(max_diff(a, b), 1e-12);
}

TEST(Rasterize, ThreadCountIndependent) {
    const auto cloud = random_cloud(500, 6);
    const auto rig = make_views(cloud, small_config(4, 64));
    const auto g = init_gaussians(cloud);
    const auto one = rasterize(g, rig, {1, 1e-4});
    const auto many = rasterize(g, rig, {5, 1e-4});
    EXPECT_EQ(one.color, many.color);
    EXPECT_EQ(one.depth, many.depth);
    EXPECT_EQ(one.alpha, many.alpha);
}

TEST(Blend, TelescopingIdentity) {
    std::mt19937_64 gen(1);
    for (int trial = 0; trial < 200; ++trial) {
        const auto alphas = testutil::random_scores(1 + trial % 40, gen);
        double survive = 1.0;
        for (const double a : alphas) survive *= 1.0 - a;
        EXPECT_NEAR(composite_alpha(alphas), 1.0 - survive, 1e-12);
    }
}

TEST(Masks, ZeroLabelsGiveBlackMasks) {
    auto cloud = random_cloud(300, 7);
    std::fill(cloud.labels.begin(), cloud.labels.end(), 0.0);
    const auto rig = make_views(cloud, small_config(2, 24));
    const auto masks = render_affordance_masks(cloud, rig, 0.02, 0.9);
    EXPECT_EQ(masks.size(), 2u * 24u * 24u);
    EXPECT_TRUE(std::all_of(masks.begin(), masks.end(), [](double v) { return v == 0.0; }));
}

TEST(Masks, FullLabelsSaturate) {
    // A dense slab of opaque label-1 points fills the center pixel.
    LabeledCloud cloud;
    for (int i = -10; i <= 10; ++i)
        for (int j = -10; j <= 10; ++j)
            for (int k = 0; k < 3; ++k) {
                cloud.points.push_back({0.02 * i, 0.02 * j, 0.02 * k});
                cloud.labels.push_back(1.0);
            }
    const auto rig = make_views(cloud, small_config(1, 16));
    const auto masks = render_affordance_masks(cloud, rig, 0.03, 0.99);
    EXPECT_NEAR(masks[8 * 16 + 8], 1.0, 1e-3);
    for (const double m : masks) {
        EXPECT_GE(m, 0.0);
        EXPECT_LE(m, 1.0 + 1e-12);
    }
}

TEST(Features, LabelFeaturesEqualMasks) {
    const auto cloud = random_cloud(300, 8);
    const auto rig = make_views(cloud, small_config(2, 32));
    const auto masks = render_affordance_masks(cloud, rig, 0.02, 0.9);
    const auto f = splat_features(cloud, cloud.labels, 1, rig);
    EXPECT_LE(max_abs_diff(f.feature, masks), 1e-12);
    EXPECT_THROW(splat_features(cloud, std::span(cloud.labels).first(10), 1, rig), Error);
}

TEST(Features, Linearity) {
    const auto cloud = random_cloud(300, 9);
    const auto rig = make_views(cloud, small_config(3, 32));
    std::mt19937_64 gen(9);
    const auto f1 = testutil::random_scores(600, gen);
    const auto f2 = testutil::random_scores(600, gen);
    const double a = 0.7, b = -1.3;
    std::vector<double> mix(600);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * f1[i] + b * f2[i];
    const auto r1 = splat_features(cloud, f1, 2, rig);
    const auto r2 = splat_features(cloud, f2, 2, rig);
    const auto rm = splat_features(cloud, mix, 2, rig);
    double worst = 0.0;
    for (std::size_t i = 0; i < rm.feature.size(); ++i) {
        worst = std::max(worst, std::abs(rm.feature[i] - a * r1.feature[i] - b * r2.feature[i]));
    }
    EXPECT_LE(worst, 1e-5);
}

TEST(Colormap, ConstantDepthIsMidGray) {
    const std::vector<double> depth(4, 2.0), alpha(4, 1.0);
    const auto out = colormap_depth(depth, alpha, 1, 2, 2, DepthColormap::Grayscale);
    for (const double v : out.images) EXPECT_DOUBLE_EQ(v, 0.5);
    EXPECT_FALSE(out.all_invalid[0]);
}

TEST(Colormap, NoValidPixelsIsFlaggedAndBlack) {
    const std::vector<double> depth(8, 1.0), alpha(8, 0.0);
    const auto out = colormap_depth(depth, alpha, 2, 2, 2, DepthColormap::Turbo);
    EXPECT_EQ(out.all_invalid, (std::vector<bool>{true, true}));
    for (const double v : out.images) EXPECT_EQ(v, 0.0);
}

TEST(Colormap, InverseMapsNearestToWhite) {
    const std::vector<double> depth{1.0, 2.0, 3.0, 9.0}, alpha{1.0, 1.0, 1.0, 0.0};
    const auto out = colormap_depth(depth, alpha, 1, 2, 2, DepthColormap::GrayscaleInverse);
    for (int c = 0; c < 3; ++c) {
        EXPECT_DOUBLE_EQ(out.images[c * 4 + 0], 1.0);
        EXPECT_DOUBLE_EQ(out.images[c * 4 + 1], 0.5);
        EXPECT_DOUBLE_EQ(out.images[c * 4 + 2], 0.0);
        EXPECT_DOUBLE_EQ(out.images[c * 4 + 3], 0.0);
    }
    const std::vector<double> bad{1.0, std::nan(""), 3.0, 9.0};
    EXPECT_THROW(colormap_depth(bad, alpha, 1, 2, 2, DepthColormap::Grayscale), Error);
}

TEST(Colormap, TurboEndpoints) {
    const auto lo = turbo(0.1);
    const auto mid = turbo(0.5);
    const auto hi = turbo(0.9);
    EXPECT_GT(lo[2], lo[0]);
    EXPECT_GT(mid[1], mid[2]);
    EXPECT_GT(hi[0], hi[2]);
    EXPECT_EQ(parse_depth_colormap("turbo"), DepthColormap::Turbo);
    EXPECT_FALSE(parse_depth_colormap("jet"));
}
