// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/cloud.hpp"

#include "splatbench/error.hpp"

#include <algorithm>
#include <cmath>

namespace splatbench {

ValidationReport validate_cloud(const LabeledCloud& cloud) {
    ValidationReport report;
    if (cloud.points.size() != cloud.labels.size()) {
        report.violations.push_back("length mismatch: " + std::to_string(cloud.points.size()) + " points, " +
                                    std::to_string(cloud.labels.size()) + " labels");
    }
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const auto& p = cloud.points[i];
        if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || !std::isfinite(p[2])) {
            report.violations.push_back("non-finite coordinate at index " + std::to_string(i));
        }
    }
    for (std::size_t i = 0; i < cloud.labels.size(); ++i) {
        const double y = cloud.labels[i];
        // NaN fails both comparisons and lands here too.
        if (!(y >= 0.0 && y <= 1.0)) {
            report.violations.push_back("label out of range at index " + std::to_string(i));
        }
    }
    if (cloud.points.size() != kCanonicalPointCount) {
        report.warnings.push_back("point count " + std::to_string(cloud.points.size()) + " differs from canonical " +
                                  std::to_string(kCanonicalPointCount));
    }
    return report;
}

void require_valid(const LabeledCloud& cloud) {
    const auto report = validate_cloud(cloud);
    if (report.ok()) {
        return;
    }
    std::string message = report.violations.front();
    if (report.violations.size() > 1) {
        message += " (+" + std::to_string(report.violations.size() - 1) + " more)";
    }
    throw Error(ErrorCode::InvalidCloud, message);
}

Vec3 centroid(std::span<const Vec3> points) {
    Vec3 sum{0.0, 0.0, 0.0};
    if (points.empty()) {
        return sum;
    }
    for (const auto& p : points) {
        sum = sum + p;
    }
    return (1.0 / static_cast<double>(points.size())) * sum;
}

double bounding_radius(std::span<const Vec3> points) {
    const Vec3 c = centroid(points);
    double radius = 0.0;
    for (const auto& p : points) {
        radius = std::max(radius, norm(p - c));
    }
    return radius;
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    return n > 0.0 ? (1.0 / n) * a : Vec3{0.0, 0.0, 0.0};
}

} // namespace splatbench
