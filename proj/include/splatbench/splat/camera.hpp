// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "splatbench/cloud.hpp"

#include <cstddef>
#include <vector>

namespace splatbench {

/// Pinhole intrinsics in pixels. Pixel (x, y) covers [x, x+1) x [y, y+1);
/// its center is sampled at (x + 0.5, y + 0.5).
struct Intrinsics {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    std::size_t width = 0;
    std::size_t height = 0;
};

/// World-to-view rigid transform, view = rotation * world + translation.
/// View axes: x right, y down, z forward (optical axis).
struct Pose {
    Mat3 rotation{};
    Vec3 translation{};

    Vec3 to_view(const Vec3& world) const { return rotation * world + translation; }
    /// Camera center in world coordinates.
    Vec3 center() const;
};

Pose look_at(const Vec3& eye, const Vec3& target, const Vec3& up = {0.0, 1.0, 0.0});

struct CameraRig {
    std::vector<Pose> poses;
    Intrinsics intrinsics;
    Vec3 target{};

    std::size_t views() const noexcept { return poses.size(); }
};

struct RigConfig {
    std::size_t views = 12;
    std::size_t resolution = 112;
    double radius_factor = 2.5;
    std::vector<double> elevations_deg{30.0, -30.0};
    /// Full field of view in degrees; 0 picks one that frames the bounding sphere.
    double fov_deg = 0.0;
};

/// Views are split over the elevation rings as evenly as possible (earlier rings
/// take the remainder); ring r with n_r views places camera k at azimuth 2*pi*k/n_r.
/// Cameras sit at radius_factor * radius from target and look at it.
/// Throws Error(InvalidConfig) for views < 1, radius_factor <= 1, resolution 0,
/// no elevations, or a field of view outside (0, 180).
CameraRig make_views(const Vec3& target, double radius, const RigConfig& config);

/// Rig around the cloud centroid sized by its bounding radius.
CameraRig make_views(const LabeledCloud& cloud, const RigConfig& config);

} // namespace splatbench
