// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

namespace splatbench::oracle {

double auc_pairs(std::span<const double> pred, std::span<const double> gt) {
    double credit = 0.0;
    double pairs = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (!(gt[i] > 0.0)) continue;
        for (std::size_t j = 0; j < pred.size(); ++j) {
            if (gt[j] > 0.0) continue;
            pairs += 1.0;
            if (pred[i] > pred[j]) {
                credit += 1.0;
            } else if (pred[i] == pred[j]) {
                credit += 0.5;
            }
        }
    }
    return pairs > 0.0 ? credit / pairs : std::numeric_limits<double>::quiet_NaN();
}

double iou_sets(std::span<const double> pred, std::span<const double> gt, double threshold) {
    std::set<std::size_t> predicted, truth;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] > threshold) predicted.insert(i);
        if (gt[i] > 0.0) truth.insert(i);
    }
    std::vector<std::size_t> both, either;
    std::set_intersection(predicted.begin(), predicted.end(), truth.begin(), truth.end(), std::back_inserter(both));
    std::set_union(predicted.begin(), predicted.end(), truth.begin(), truth.end(), std::back_inserter(either));
    if (either.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return static_cast<double>(both.size()) / static_cast<double>(either.size());
}

double aiou_sets(std::span<const double> pred, std::span<const double> gt, std::span<const double> thresholds) {
    double total = 0.0;
    for (const double t : thresholds) {
        total += iou_sets(pred, gt, t);
    }
    return total / static_cast<double>(thresholds.size());
}

double sim_loop(std::span<const double> pred, std::span<const double> gt) {
    double sp = 0.0, sg = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        sp += pred[i];
        sg += gt[i];
    }
    double total = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        total += std::min(pred[i] / sp, gt[i] / sg);
    }
    return total;
}

double mae_loop(std::span<const double> pred, std::span<const double> gt) {
    double total = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        total += std::abs(pred[i] - gt[i]);
    }
    return total / static_cast<double>(pred.size());
}

double mse_loop(std::span<const float> a, std::span<const float> b, std::span<const unsigned char> mask,
                std::size_t views, std::size_t channels, std::size_t height, std::size_t width) {
    double total = 0.0;
    double count = 0.0;
    for (std::size_t v = 0; v < views; ++v) {
        for (std::size_t c = 0; c < channels; ++c) {
            for (std::size_t y = 0; y < height; ++y) {
                for (std::size_t x = 0; x < width; ++x) {
                    if (!mask.empty() && mask[(v * height + y) * width + x] == 0) continue;
                    const std::size_t i = ((v * channels + c) * height + y) * width + x;
                    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
                    total += d * d;
                    count += 1.0;
                }
            }
        }
    }
    return count > 0.0 ? total / count : std::numeric_limits<double>::quiet_NaN();
}

std::vector<std::size_t> nearest(std::span<const Vec3> points, std::size_t center, std::size_t k) {
    std::vector<std::tuple<double, int, std::size_t>> ranked;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double d2 = 0.0;
        for (int axis = 0; axis < 3; ++axis) {
            const double d = points[i][axis] - points[center][axis];
            d2 += d * d;
        }
        ranked.emplace_back(d2, i == center ? 0 : 1, i);
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
        out.push_back(std::get<2>(ranked[i]));
    }
    return out;
}

} // namespace splatbench::oracle
