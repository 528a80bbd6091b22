// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Deliberately slow, obviously-correct implementations used to cross-check
// the library in tests and in the selftest command.

#include "splatbench/cloud.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace splatbench::oracle {

/// Fraction of (positive, negative) pairs ranked correctly, ties worth 1/2.
/// Returns NaN when either class is empty.
double auc_pairs(std::span<const double> pred, std::span<const double> gt);

/// |{pred > t} & {gt > 0}| / |{pred > t} | {gt > 0}| via explicit index sets.
double iou_sets(std::span<const double> pred, std::span<const double> gt, double threshold);

double aiou_sets(std::span<const double> pred, std::span<const double> gt, std::span<const double> thresholds);

double sim_loop(std::span<const double> pred, std::span<const double> gt);

double mae_loop(std::span<const double> pred, std::span<const double> gt);

/// Mean squared difference over (view, channel, y, x) where mask[view][y][x] != 0.
/// An empty mask means every pixel. Returns NaN when nothing is selected.
double mse_loop(std::span<const float> a, std::span<const float> b, std::span<const unsigned char> mask,
                std::size_t views, std::size_t channels, std::size_t height, std::size_t width);

/// Indices of the k points nearest to points[center], ordered by squared distance,
/// then center first, then index.
std::vector<std::size_t> nearest(std::span<const Vec3> points, std::size_t center, std::size_t k);

} // namespace splatbench::oracle
