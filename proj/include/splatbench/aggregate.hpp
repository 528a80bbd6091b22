// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "splatbench/metrics.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace splatbench {

/// One metric value for one evaluated sample; a row of the eval CSV.
struct EvalRecord {
    std::uint64_t sample_id = 0;
    std::string category;
    std::string affordance;
    std::string corruption = "clean"; // corruption machine name or "clean"
    int severity = 0;                 // 0 for clean samples
    Metric metric = Metric::Auc;
    std::optional<double> value;      // empty when the metric is undefined
    std::string flag;

    friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

/// Flattens a report into one record per requested metric.
std::vector<EvalRecord> to_records(const MetricReport& report, std::span<const Metric> metrics,
                                   std::uint64_t sample_id, const std::string& category,
                                   const std::string& affordance, const std::string& corruption, int severity);

enum class GroupKey { Category, Affordance, Corruption, Severity };

std::string_view to_string(GroupKey key);
std::optional<GroupKey> parse_group_key(std::string_view name);

struct GroupCell {
    std::optional<double> mean; // empty when every sample in the group was excluded
    std::size_t count = 0;      // samples contributing to the mean
    std::size_t excluded = 0;   // degenerate samples left out
};

struct GroupRow {
    std::vector<std::string> key; // one entry per GroupKey, in table order
    std::vector<GroupCell> cells; // one entry per metric, in table order
};

struct AggregateTable {
    std::vector<GroupKey> keys;
    std::vector<Metric> metrics;
    std::vector<GroupRow> rows;

    std::size_t total_excluded() const;
};

/// Unweighted means grouped by `keys`. Rows are ordered by key: corruptions in
/// taxonomy order ("clean" first), severities numerically, strings lexically.
/// Sums are folded in (sample_id, corruption, severity) order so the result does
/// not depend on the order of `records`. Records for metrics not listed in
/// `metrics` are ignored.
AggregateTable aggregate(std::span<const EvalRecord> records, std::span<const GroupKey> keys,
                         std::span<const Metric> metrics = kAllMetrics);

} // namespace splatbench
