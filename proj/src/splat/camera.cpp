// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/splat/camera.hpp"

#include "splatbench/error.hpp"

#include <cmath>
#include <numbers>

namespace splatbench {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Slack so the bounding sphere does not touch the image border.
constexpr double kAutoFovMargin = 1.1;

} // namespace

Vec3 Pose::center() const {
    // center = -R^T t
    Vec3 c{};
    for (int i = 0; i < 3; ++i) {
        c[i] = -(rotation[0][i] * translation[0] + rotation[1][i] * translation[1] + rotation[2][i] * translation[2]);
    }
    return c;
}

Pose look_at(const Vec3& eye, const Vec3& target, const Vec3& up) {
    const Vec3 forward = normalized(target - eye);
    Vec3 right = cross(forward, up);
    if (norm(right) < 1e-12) {
        // Looking along the up vector; any perpendicular works.
        right = cross(forward, std::abs(forward[2]) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0});
    }
    right = normalized(right);
    const Vec3 down = cross(forward, right);

    Pose pose;
    pose.rotation = Mat3{right, down, forward};
    const Vec3 t = pose.rotation * eye;
    pose.translation = {-t[0], -t[1], -t[2]};
    return pose;
}

CameraRig make_views(const Vec3& target, double radius, const RigConfig& config) {
    if (config.views < 1) {
        throw Error(ErrorCode::InvalidConfig, "views must be at least 1");
    }
    if (!(config.radius_factor > 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "radius_factor must be greater than 1");
    }
    if (config.resolution < 1) {
        throw Error(ErrorCode::InvalidConfig, "resolution must be at least 1");
    }
    if (config.elevations_deg.empty()) {
        throw Error(ErrorCode::InvalidConfig, "at least one elevation ring is required");
    }
    if (config.fov_deg != 0.0 && !(config.fov_deg > 0.0 && config.fov_deg < 180.0)) {
        throw Error(ErrorCode::InvalidConfig, "fov_deg must lie in (0, 180)");
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        radius = 1.0;
    }

    const double half_fov = config.fov_deg > 0.0
                                ? 0.5 * config.fov_deg * kDegToRad
                                : std::min(std::asin(1.0 / config.radius_factor) * kAutoFovMargin, 0.49 * std::numbers::pi);
    const double focal = 0.5 * static_cast<double>(config.resolution) / std::tan(half_fov);

    CameraRig rig;
    rig.target = target;
    rig.intrinsics = Intrinsics{focal,
                                focal,
                                0.5 * static_cast<double>(config.resolution),
                                0.5 * static_cast<double>(config.resolution),
                                config.resolution,
                                config.resolution};

    const std::size_t rings = config.elevations_deg.size();
    const double distance = config.radius_factor * radius;
    for (std::size_t r = 0; r < rings; ++r) {
        const std::size_t in_ring = config.views / rings + (r < config.views % rings ? 1 : 0);
        const double elevation = config.elevations_deg[r] * kDegToRad;
        for (std::size_t k = 0; k < in_ring; ++k) {
            const double azimuth = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(in_ring);
            const Vec3 offset{std::cos(elevation) * std::sin(azimuth), std::sin(elevation),
                              std::cos(elevation) * std::cos(azimuth)};
            rig.poses.push_back(look_at(target + distance * offset, target));
        }
    }
    return rig;
}

CameraRig make_views(const LabeledCloud& cloud, const RigConfig& config) {
    return make_views(centroid(cloud.points), bounding_radius(cloud.points), config);
}

} // namespace splatbench
