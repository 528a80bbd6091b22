// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/aggregate.hpp"

#include "splatbench/corrupt.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

namespace splatbench {

namespace {

int corruption_rank(const std::string& name) {
    if (name == "clean") {
        return 0;
    }
    if (const auto kind = parse_corruption_kind(name)) {
        return 1 + static_cast<int>(*kind);
    }
    return 100;
}

// (numeric rank, text) per key component; compared lexicographically.
using SortKey = std::vector<std::pair<long, std::string>>;

SortKey make_key(const EvalRecord& r, std::span<const GroupKey> keys) {
    SortKey key;
    key.reserve(keys.size());
    for (const GroupKey k : keys) {
        switch (k) {
        case GroupKey::Category: key.emplace_back(0, r.category); break;
        case GroupKey::Affordance: key.emplace_back(0, r.affordance); break;
        case GroupKey::Corruption: key.emplace_back(corruption_rank(r.corruption), r.corruption); break;
        case GroupKey::Severity: key.emplace_back(r.severity, std::to_string(r.severity)); break;
        }
    }
    return key;
}

struct Accumulator {
    double sum = 0.0;
    std::size_t count = 0;
    std::size_t excluded = 0;
};

} // namespace

std::vector<EvalRecord> to_records(const MetricReport& report, std::span<const Metric> metrics,
                                   std::uint64_t sample_id, const std::string& category,
                                   const std::string& affordance, const std::string& corruption, int severity) {
    std::vector<EvalRecord> records;
    for (const Metric m : metrics) {
        EvalRecord r;
        r.sample_id = sample_id;
        r.category = category;
        r.affordance = affordance;
        r.corruption = corruption;
        r.severity = severity;
        r.metric = m;
        r.value = report.get(m);
        if (!r.value) {
            r.flag = "undefined";
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::string_view to_string(GroupKey key) {
    switch (key) {
    case GroupKey::Category: return "category";
    case GroupKey::Affordance: return "affordance";
    case GroupKey::Corruption: return "corruption";
    case GroupKey::Severity: return "severity";
    }
    return "unknown";
}

std::optional<GroupKey> parse_group_key(std::string_view name) {
    for (const GroupKey k : {GroupKey::Category, GroupKey::Affordance, GroupKey::Corruption, GroupKey::Severity}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    return std::nullopt;
}

std::size_t AggregateTable::total_excluded() const {
    std::size_t total = 0;
    for (const auto& row : rows) {
        for (const auto& cell : row.cells) {
            total += cell.excluded;
        }
    }
    return total;
}

AggregateTable aggregate(std::span<const EvalRecord> records, std::span<const GroupKey> keys,
                         std::span<const Metric> metrics) {
    AggregateTable table;
    table.keys.assign(keys.begin(), keys.end());
    table.metrics.assign(metrics.begin(), metrics.end());

    std::vector<const EvalRecord*> ordered;
    ordered.reserve(records.size());
    for (const auto& r : records) {
        ordered.push_back(&r);
    }
    std::stable_sort(ordered.begin(), ordered.end(), [](const EvalRecord* a, const EvalRecord* b) {
        return std::make_tuple(a->sample_id, corruption_rank(a->corruption), a->corruption, a->severity) <
               std::make_tuple(b->sample_id, corruption_rank(b->corruption), b->corruption, b->severity);
    });

    std::map<SortKey, std::vector<Accumulator>> groups;
    std::map<SortKey, std::vector<std::string>> labels;
    for (const EvalRecord* r : ordered) {
        const auto slot = std::find(table.metrics.begin(), table.metrics.end(), r->metric);
        if (slot == table.metrics.end()) {
            continue;
        }
        SortKey key = make_key(*r, keys);
        auto [it, inserted] = groups.try_emplace(key, table.metrics.size());
        if (inserted) {
            std::vector<std::string> text;
            for (const auto& part : key) {
                text.push_back(part.second);
            }
            labels.emplace(key, std::move(text));
        }
        Accumulator& acc = it->second[static_cast<std::size_t>(slot - table.metrics.begin())];
        if (r->value) {
            acc.sum += *r->value;
            ++acc.count;
        } else {
            ++acc.excluded;
        }
    }

    for (const auto& [key, accumulators] : groups) {
        GroupRow row;
        row.key = labels.at(key);
        for (const auto& acc : accumulators) {
            GroupCell cell;
            cell.count = acc.count;
            cell.excluded = acc.excluded;
            if (acc.count > 0) {
                cell.mean = acc.sum / static_cast<double>(acc.count);
            }
            row.cells.push_back(cell);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace splatbench
