// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/metrics.hpp"

#include "splatbench/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace splatbench {

namespace {

void require_same_length(std::span<const double> prediction, std::span<const double> ground_truth) {
    if (prediction.size() != ground_truth.size()) {
        throw Error(ErrorCode::DimensionMismatch, "prediction has " + std::to_string(prediction.size()) +
                                                      " values, ground truth " +
                                                      std::to_string(ground_truth.size()));
    }
}

void require_unit_range(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
            throw Error(ErrorCode::LabelOutOfRange,
                        std::string(what) + " value out of [0, 1] at index " + std::to_string(i));
        }
    }
}

} // namespace

std::string_view to_string(Metric metric) {
    switch (metric) {
    case Metric::Aiou: return "aiou";
    case Metric::Auc: return "auc";
    case Metric::Sim: return "sim";
    case Metric::Mae: return "mae";
    }
    return "unknown";
}

std::string_view display_name(Metric metric) {
    switch (metric) {
    case Metric::Aiou: return "aIoU";
    case Metric::Auc: return "AUC";
    case Metric::Sim: return "SIM";
    case Metric::Mae: return "MAE";
    }
    return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    for (const Metric m : kAllMetrics) {
        if (key == to_string(m)) {
            return m;
        }
    }
    return std::nullopt;
}

std::vector<double> default_iou_thresholds() {
    std::vector<double> thresholds;
    for (int k = 1; k <= 19; ++k) {
        thresholds.push_back(static_cast<double>(k) / 20.0);
    }
    return thresholds;
}

double auc(std::span<const double> prediction, std::span<const double> ground_truth) {
    require_same_length(prediction, ground_truth);
    const std::size_t n = prediction.size();

    std::size_t positives = 0;
    for (const double y : ground_truth) {
        positives += y > 0.0 ? 1 : 0;
    }
    const std::size_t negatives = n - positives;
    if (positives == 0 || negatives == 0) {
        throw Error(ErrorCode::UndefinedMetric, "AUC needs both positive and negative ground-truth points");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return prediction[a] < prediction[b]; });

    // Average 1-based ranks over runs of tied scores.
    double positive_rank_sum = 0.0;
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && prediction[order[end]] == prediction[order[start]]) {
            ++end;
        }
        const double average_rank = 0.5 * static_cast<double>(start + 1 + end);
        for (std::size_t k = start; k < end; ++k) {
            if (ground_truth[order[k]] > 0.0) {
                positive_rank_sum += average_rank;
            }
        }
        start = end;
    }

    const double p = static_cast<double>(positives);
    const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
    return u / (p * static_cast<double>(negatives));
}

double aiou(std::span<const double> prediction, std::span<const double> ground_truth,
            std::span<const double> thresholds) {
    require_same_length(prediction, ground_truth);
    if (thresholds.empty()) {
        throw Error(ErrorCode::InvalidConfig, "aIoU needs at least one threshold");
    }
    const bool any_positive =
        std::any_of(ground_truth.begin(), ground_truth.end(), [](double y) { return y > 0.0; });
    if (!any_positive) {
        throw Error(ErrorCode::UndefinedMetric, "aIoU needs at least one positive ground-truth point");
    }

    double iou_sum = 0.0;
    for (const double t : thresholds) {
        std::size_t intersection = 0;
        std::size_t uni = 0;
        for (std::size_t i = 0; i < prediction.size(); ++i) {
            const bool predicted = prediction[i] > t;
            const bool actual = ground_truth[i] > 0.0;
            intersection += (predicted && actual) ? 1 : 0;
            uni += (predicted || actual) ? 1 : 0;
        }
        iou_sum += static_cast<double>(intersection) / static_cast<double>(uni);
    }
    return iou_sum / static_cast<double>(thresholds.size());
}

double aiou(std::span<const double> prediction, std::span<const double> ground_truth) {
    const auto thresholds = default_iou_thresholds();
    return aiou(prediction, ground_truth, thresholds);
}

double sim(std::span<const double> prediction, std::span<const double> ground_truth) {
    require_same_length(prediction, ground_truth);
    const double p_sum = std::accumulate(prediction.begin(), prediction.end(), 0.0);
    const double q_sum = std::accumulate(ground_truth.begin(), ground_truth.end(), 0.0);
    if (!(p_sum > 0.0) || !(q_sum > 0.0)) {
        throw Error(ErrorCode::UndefinedMetric, "SIM needs both maps to have positive mass");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < prediction.size(); ++i) {
        total += std::min(prediction[i] / p_sum, ground_truth[i] / q_sum);
    }
    return total;
}

double mae(std::span<const double> prediction, std::span<const double> ground_truth) {
    require_same_length(prediction, ground_truth);
    if (prediction.empty()) {
        throw Error(ErrorCode::UndefinedMetric, "MAE of an empty map");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < prediction.size(); ++i) {
        total += std::abs(prediction[i] - ground_truth[i]);
    }
    return total / static_cast<double>(prediction.size());
}

double consistency_mse(std::span<const float> feature_a, FeatureShape shape_a, std::span<const float> feature_b,
                       FeatureShape shape_b, std::span<const std::uint8_t> valid_mask) {
    if (!(shape_a == shape_b) || feature_a.size() != shape_a.size() || feature_b.size() != shape_b.size()) {
        throw Error(ErrorCode::DimensionMismatch, "feature stacks differ in shape");
    }
    if (!valid_mask.empty() && valid_mask.size() != shape_a.pixels()) {
        throw Error(ErrorCode::DimensionMismatch, "valid mask does not match V x H x W");
    }
    const std::size_t plane = shape_a.height * shape_a.width;
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t v = 0; v < shape_a.views; ++v) {
        for (std::size_t c = 0; c < shape_a.channels; ++c) {
            const std::size_t base = (v * shape_a.channels + c) * plane;
            for (std::size_t px = 0; px < plane; ++px) {
                if (!valid_mask.empty() && valid_mask[v * plane + px] == 0) {
                    continue;
                }
                const double d = static_cast<double>(feature_a[base + px]) - static_cast<double>(feature_b[base + px]);
                total += d * d;
                ++count;
            }
        }
    }
    if (count == 0) {
        throw Error(ErrorCode::UndefinedMetric, "no valid pixels for consistency MSE");
    }
    return total / static_cast<double>(count);
}

std::optional<double> MetricReport::get(Metric metric) const {
    switch (metric) {
    case Metric::Aiou: return aiou;
    case Metric::Auc: return auc;
    case Metric::Sim: return sim;
    case Metric::Mae: return mae;
    }
    return std::nullopt;
}

MetricReport evaluate(std::span<const double> prediction, std::span<const double> ground_truth,
                      std::span<const Metric> metrics, std::span<const double> thresholds) {
    require_same_length(prediction, ground_truth);
    require_unit_range(prediction, "prediction");
    require_unit_range(ground_truth, "ground truth");

    const std::vector<double> grid =
        thresholds.empty() ? default_iou_thresholds() : std::vector<double>(thresholds.begin(), thresholds.end());

    MetricReport report;
    for (const Metric metric : metrics) {
        try {
            switch (metric) {
            case Metric::Aiou: report.aiou = splatbench::aiou(prediction, ground_truth, grid); break;
            case Metric::Auc: report.auc = splatbench::auc(prediction, ground_truth); break;
            case Metric::Sim: report.sim = splatbench::sim(prediction, ground_truth); break;
            case Metric::Mae: report.mae = splatbench::mae(prediction, ground_truth); break;
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::UndefinedMetric) {
                throw;
            }
            report.flags.push_back(std::string(to_string(metric)) + ":undefined");
        }
    }
    return report;
}

} // namespace splatbench
