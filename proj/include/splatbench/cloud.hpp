// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace splatbench {

using Vec3 = std::array<double, 3>;

/// Canonical dataset cloud size. Other sizes load with a warning.
inline constexpr std::size_t kCanonicalPointCount = 2048;

/// Point coordinates plus one affordance score in [0,1] per point.
/// Coordinates are held in double precision; files store float32.
struct LabeledCloud {
    std::vector<Vec3> points;
    std::vector<double> labels;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }

    friend bool operator==(const LabeledCloud&, const LabeledCloud&) = default;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_cloud(const LabeledCloud& cloud);

/// Throws Error(InvalidCloud) listing the first violations when the cloud is invalid.
void require_valid(const LabeledCloud& cloud);

Vec3 centroid(std::span<const Vec3> points);

/// Largest distance from the centroid; 0 for empty input.
double bounding_radius(std::span<const Vec3> points);

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
/// Row-major 3x3 matrix.
using Mat3 = std::array<std::array<double, 3>, 3>;

inline Vec3 operator*(const Mat3& m, const Vec3& v) { return {dot(m[0], v), dot(m[1], v), dot(m[2], v)}; }

double norm(const Vec3& a);
Vec3 normalized(const Vec3& a);

} // namespace splatbench
