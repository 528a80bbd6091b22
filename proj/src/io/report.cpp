// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/io/report.hpp"

#include "splatbench/corrupt.hpp"
#include "splatbench/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

namespace splatbench::io {

namespace {

constexpr const char* kEvalHeader = "sample_id,category,affordance,corruption,severity,metric,value,flag";

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (const char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::vector<std::string> parse_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string format_exact(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

std::string format_display(Metric metric, const std::optional<double>& v) {
    if (!v) {
        return "n/a";
    }
    char buffer[32];
    if (metric == Metric::Aiou || metric == Metric::Auc) {
        std::snprintf(buffer, sizeof buffer, "%.1f", 100.0 * *v);
    } else {
        std::snprintf(buffer, sizeof buffer, "%.3f", *v);
    }
    return buffer;
}

std::string display_key(GroupKey key, const std::string& value) {
    if (key == GroupKey::Corruption) {
        if (const auto kind = parse_corruption_kind(value)) {
            return std::string(display_name(*kind));
        }
        if (value == "clean") {
            return "Clean";
        }
    }
    return value;
}

template <class T>
T parse_integer(const std::string& text, const char* what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::SchemaMismatch, std::string("bad ") + what + " '" + text + "'");
    }
    return value;
}

void write_exclusions(std::ostream& out, const AggregateTable& table) {
    std::size_t total = 0;
    std::vector<std::size_t> per_metric(table.metrics.size(), 0);
    for (const auto& row : table.rows) {
        for (std::size_t m = 0; m < row.cells.size(); ++m) {
            per_metric[m] += row.cells[m].excluded;
            total += row.cells[m].excluded;
        }
    }
    out << "\nExcluded degenerate samples: " << total;
    if (total > 0) {
        out << " (";
        for (std::size_t m = 0; m < per_metric.size(); ++m) {
            out << (m ? ", " : "") << display_name(table.metrics[m]) << ": " << per_metric[m];
        }
        out << ")";
    }
    out << "\n";
}

} // namespace

void write_eval_csv(std::ostream& out, std::span<const EvalRecord> records) {
    out << "# splatbench eval schema=" << kReportSchemaVersion << "\n" << kEvalHeader << "\n";
    for (const auto& r : records) {
        out << r.sample_id << ',' << csv_field(r.category) << ',' << csv_field(r.affordance) << ','
            << csv_field(r.corruption) << ',' << r.severity << ',' << to_string(r.metric) << ','
            << (r.value ? format_exact(*r.value) : std::string{}) << ',' << csv_field(r.flag) << "\n";
    }
}

std::vector<EvalRecord> read_eval_csv(std::istream& in) {
    std::string line;
    bool saw_header = false;
    std::vector<EvalRecord> records;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("#", 0) == 0) {
            const auto pos = line.find("schema=");
            if (pos != std::string::npos) {
                const int version = parse_integer<int>(line.substr(pos + 7), "schema version");
                if (version > kReportSchemaVersion) {
                    throw Error(ErrorCode::SchemaMismatch, "eval schema " + std::to_string(version) + " is newer");
                }
            }
            continue;
        }
        if (!saw_header) {
            if (line != kEvalHeader) {
                throw Error(ErrorCode::SchemaMismatch, "unexpected eval CSV header '" + line + "'");
            }
            saw_header = true;
            continue;
        }
        const auto f = parse_csv_row(line);
        if (f.size() != 8) {
            throw Error(ErrorCode::SchemaMismatch, "eval row has " + std::to_string(f.size()) + " fields");
        }
        EvalRecord r;
        r.sample_id = parse_integer<std::uint64_t>(f[0], "sample_id");
        r.category = f[1];
        r.affordance = f[2];
        r.corruption = f[3];
        r.severity = parse_integer<int>(f[4], "severity");
        const auto metric = parse_metric(f[5]);
        if (!metric) {
            throw Error(ErrorCode::SchemaMismatch, "unknown metric '" + f[5] + "'");
        }
        r.metric = *metric;
        if (!f[6].empty()) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(f[6].data(), f[6].data() + f[6].size(), v);
            if (ec != std::errc{} || ptr != f[6].data() + f[6].size()) {
                throw Error(ErrorCode::SchemaMismatch, "bad value '" + f[6] + "'");
            }
            r.value = v;
        }
        r.flag = f[7];
        records.push_back(std::move(r));
    }
    if (!saw_header) {
        throw Error(ErrorCode::SchemaMismatch, "eval CSV has no header");
    }
    return records;
}

void write_aggregate_csv(std::ostream& out, const AggregateTable& table) {
    out << "# splatbench aggregate schema=" << kReportSchemaVersion << "\n";
    bool first = true;
    for (const GroupKey k : table.keys) {
        out << (first ? "" : ",") << to_string(k);
        first = false;
    }
    for (const Metric m : table.metrics) {
        out << (first ? "" : ",") << to_string(m) << "_mean," << to_string(m) << "_n," << to_string(m)
            << "_excluded";
        first = false;
    }
    out << "\n";
    for (const auto& row : table.rows) {
        first = true;
        for (const auto& k : row.key) {
            out << (first ? "" : ",") << csv_field(k);
            first = false;
        }
        for (const auto& cell : row.cells) {
            out << (first ? "" : ",") << (cell.mean ? format_exact(*cell.mean) : std::string{}) << ','
                << cell.count << ',' << cell.excluded;
            first = false;
        }
        out << "\n";
    }
}

void write_aggregate_markdown(std::ostream& out, const AggregateTable& table) {
    out << "<!-- splatbench report schema=" << kReportSchemaVersion << " -->\n|";
    for (const GroupKey k : table.keys) {
        out << ' ' << to_string(k) << " |";
    }
    for (const Metric m : table.metrics) {
        out << ' ' << display_name(m) << " |";
    }
    out << "\n|";
    for (std::size_t i = 0; i < table.keys.size(); ++i) out << " --- |";
    for (std::size_t i = 0; i < table.metrics.size(); ++i) out << " ---: |";
    out << "\n";
    for (const auto& row : table.rows) {
        out << "|";
        for (std::size_t i = 0; i < row.key.size(); ++i) {
            out << ' ' << display_key(table.keys[i], row.key[i]) << " |";
        }
        for (std::size_t m = 0; m < row.cells.size(); ++m) {
            out << ' ' << format_display(table.metrics[m], row.cells[m].mean) << " |";
        }
        out << "\n";
    }
    write_exclusions(out, table);
}

void write_corruption_comparison_markdown(std::ostream& out, std::span<const ModelTable> models) {
    if (models.empty()) {
        throw Error(ErrorCode::InvalidConfig, "no tables to compare");
    }
    const auto& reference = models.front().table;
    for (const auto& model : models) {
        if (model.table.keys != std::vector<GroupKey>{GroupKey::Corruption}) {
            throw Error(ErrorCode::InvalidConfig, "comparison tables must be grouped by corruption only");
        }
        if (model.table.metrics != reference.metrics) {
            throw Error(ErrorCode::InvalidConfig, "comparison tables must share a metric list");
        }
    }

    // Union of corruption rows in taxonomy order.
    std::vector<std::string> corruptions;
    for (const auto& model : models) {
        for (const auto& row : model.table.rows) {
            if (std::find(corruptions.begin(), corruptions.end(), row.key[0]) == corruptions.end()) {
                corruptions.push_back(row.key[0]);
            }
        }
    }
    auto rank = [](const std::string& c) {
        const auto kind = parse_corruption_kind(c);
        return c == "clean" ? -1 : (kind ? static_cast<int>(*kind) : 100);
    };
    std::stable_sort(corruptions.begin(), corruptions.end(),
                     [&](const std::string& a, const std::string& b) { return rank(a) < rank(b); });

    const bool multi = models.size() > 1;
    out << "<!-- splatbench report schema=" << kReportSchemaVersion << " -->\n| Type |";
    for (const Metric m : reference.metrics) {
        for (const auto& model : models) {
            out << ' ' << display_name(m);
            if (multi) out << " (" << model.model << ")";
            out << " |";
        }
    }
    out << "\n| --- |";
    for (std::size_t i = 0; i < reference.metrics.size() * models.size(); ++i) out << " ---: |";
    out << "\n";
    for (const auto& corruption : corruptions) {
        out << "| " << display_key(GroupKey::Corruption, corruption) << " |";
        for (std::size_t m = 0; m < reference.metrics.size(); ++m) {
            for (const auto& model : models) {
                std::optional<double> value;
                for (const auto& row : model.table.rows) {
                    if (row.key[0] == corruption) value = row.cells[m].mean;
                }
                out << ' ' << format_display(reference.metrics[m], value) << " |";
            }
        }
        out << "\n";
    }
    for (const auto& model : models) {
        if (multi) out << "\n" << model.model << ":";
        write_exclusions(out, model.table);
    }
}

} // namespace splatbench::io
