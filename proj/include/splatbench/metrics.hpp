// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace splatbench {

enum class Metric { Aiou, Auc, Sim, Mae };

/// Column order used by every report.
inline constexpr std::array<Metric, 4> kAllMetrics{Metric::Aiou, Metric::Auc, Metric::Sim, Metric::Mae};

std::string_view to_string(Metric metric);     // "aiou", "auc", "sim", "mae"
std::string_view display_name(Metric metric);  // "aIoU", "AUC", "SIM", "MAE"
std::optional<Metric> parse_metric(std::string_view name);

/// Per-point prediction and ground truth for one sample.
struct EvalPair {
    std::vector<double> prediction;
    std::vector<double> ground_truth;
    std::string category;
    std::string affordance;
};

/// 0.05, 0.10, ..., 0.95 (computed as k / 20).
std::vector<double> default_iou_thresholds();

// Ground truth is binarized at > 0 for auc and aiou. All functions throw
// Error(DimensionMismatch) on unequal lengths and Error(UndefinedMetric) when
// the metric has no value for the input.

/// Area under the ROC curve via the Mann-Whitney rank statistic, ties at half credit.
double auc(std::span<const double> prediction, std::span<const double> ground_truth);

/// Mean over thresholds of IoU(prediction > t, ground_truth > 0).
double aiou(std::span<const double> prediction, std::span<const double> ground_truth,
            std::span<const double> thresholds);
double aiou(std::span<const double> prediction, std::span<const double> ground_truth);

/// Histogram intersection after normalizing both maps to unit mass.
double sim(std::span<const double> prediction, std::span<const double> ground_truth);

double mae(std::span<const double> prediction, std::span<const double> ground_truth);

/// Shape of a planar V x D x H x W feature stack.
struct FeatureShape {
    std::size_t views = 0;
    std::size_t channels = 0;
    std::size_t height = 0;
    std::size_t width = 0;

    std::size_t size() const noexcept { return views * channels * height * width; }
    std::size_t pixels() const noexcept { return views * height * width; }
    friend bool operator==(const FeatureShape&, const FeatureShape&) = default;
};

/// Mean squared difference over every channel of the pixels whose mask entry
/// is non-zero. The mask is V x H x W; an empty span means all pixels valid.
double consistency_mse(std::span<const float> feature_a, FeatureShape shape_a, std::span<const float> feature_b,
                       FeatureShape shape_b, std::span<const std::uint8_t> valid_mask = {});

struct MetricReport {
    std::optional<double> aiou;
    std::optional<double> auc;
    std::optional<double> sim;
    std::optional<double> mae;
    /// One entry per metric that could not be computed, e.g. "auc:undefined".
    std::vector<std::string> flags;

    std::optional<double> get(Metric metric) const;
};

/// Computes the requested metrics; degenerate inputs become flags, never zeros.
/// Throws Error(DimensionMismatch) for unequal lengths and Error(LabelOutOfRange)
/// for scores outside [0, 1].
MetricReport evaluate(std::span<const double> prediction, std::span<const double> ground_truth,
                      std::span<const Metric> metrics = kAllMetrics,
                      std::span<const double> thresholds = {});

} // namespace splatbench
