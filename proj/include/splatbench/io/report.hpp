// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "splatbench/aggregate.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace splatbench::io {

inline constexpr int kReportSchemaVersion = 1;

/// Eval CSV: a "# splatbench eval schema=1" line, then the header
/// sample_id,category,affordance,corruption,severity,metric,value,flag
/// and one row per record. Values are printed with 17 significant digits.
void write_eval_csv(std::ostream& out, std::span<const EvalRecord> records);

/// Throws Error(SchemaMismatch) on a missing/foreign header or newer schema.
std::vector<EvalRecord> read_eval_csv(std::istream& in);

/// Grouped table as CSV: key columns, then mean/n/excluded per metric.
void write_aggregate_csv(std::ostream& out, const AggregateTable& table);

/// Grouped table as Markdown: key columns then one value column per metric.
/// aIoU and AUC are shown as percentages with one decimal, SIM and MAE with
/// three decimals; excluded counts are listed under the table.
void write_aggregate_markdown(std::ostream& out, const AggregateTable& table);

/// Corruption-robustness layout: one row per corruption type, one column group
/// per metric with one sub-column per model. Every table must be grouped by
/// corruption alone and use the same metric list.
struct ModelTable {
    std::string model;
    AggregateTable table;
};
void write_corruption_comparison_markdown(std::ostream& out, std::span<const ModelTable> models);

} // namespace splatbench::io
