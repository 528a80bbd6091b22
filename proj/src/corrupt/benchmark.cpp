// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/benchmark.hpp"

#include "splatbench/error.hpp"
#include "splatbench/io/container.hpp"
#include "splatbench/io/manifest_io.hpp"
#include "splatbench/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>

namespace splatbench {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void write_text(const std::filesystem::path& path, const std::string& text) {
    io::write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

ordered_json skipped_to_json(const SkippedItem& item) {
    ordered_json j;
    j["sample_id"] = item.sample_id;
    if (item.kind) {
        j["kind"] = std::string(to_string(*item.kind));
        j["severity"] = item.severity;
    }
    j["reason"] = item.reason;
    return j;
}

void write_meta(const std::filesystem::path& path, const BenchmarkIndex& index, const BenchmarkOptions& options) {
    ordered_json meta;
    meta["schema_version"] = kBenchmarkSchemaVersion;
    meta["master_seed"] = options.master_seed;
    ordered_json kinds = ordered_json::array();
    for (const auto kind : options.kinds) {
        kinds.push_back(std::string(to_string(kind)));
    }
    meta["kinds"] = kinds;
    meta["severities"] = options.severities;
    meta["variants"] = index.variants.size();
    meta["base_pairings_total"] = index.total_base_pairings();
    ordered_json base = ordered_json::object();
    for (const auto& [dataset, count] : index.base_pairings) {
        base[dataset] = count;
    }
    meta["base_pairings"] = base;
    ordered_json per_category = ordered_json::object();
    for (const auto& [dataset, categories] : index.category_pairings) {
        ordered_json row = ordered_json::object();
        for (const auto& [category, count] : categories) {
            row[category] = count;
        }
        per_category[dataset] = row;
    }
    meta["category_pairings"] = per_category;
    ordered_json skipped = ordered_json::array();
    for (const auto& item : index.skipped) {
        skipped.push_back(skipped_to_json(item));
    }
    meta["skipped"] = skipped;
    write_text(path, meta.dump(2) + "\n");
}

} // namespace

std::size_t BenchmarkIndex::total_base_pairings() const {
    std::size_t total = 0;
    for (const auto& [dataset, count] : base_pairings) {
        total += count;
    }
    return total;
}

std::string variant_cloud_path(std::uint64_t sample_id, CorruptionKind kind, int severity) {
    return "clouds/" + std::to_string(sample_id) + "_" + std::string(to_string(kind)) + "_s" +
           std::to_string(severity) + ".pcaf";
}

BenchmarkIndex plan_benchmark(std::span<const SampleManifest> manifests, const BenchmarkOptions& options) {
    if (options.kinds.empty() || options.severities.empty()) {
        throw Error(ErrorCode::InvalidConfig, "at least one corruption kind and one severity are required");
    }
    std::vector<CorruptionKind> kinds = options.kinds;
    std::sort(kinds.begin(), kinds.end());
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
    std::vector<SeverityLevel> severities;
    for (const int s : options.severities) {
        severities.emplace_back(s);
    }
    std::sort(severities.begin(), severities.end(),
              [](SeverityLevel a, SeverityLevel b) { return a.value() < b.value(); });
    severities.erase(std::unique(severities.begin(), severities.end()), severities.end());

    std::vector<const SampleManifest*> order;
    order.reserve(manifests.size());
    for (const auto& m : manifests) {
        order.push_back(&m);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const SampleManifest* a, const SampleManifest* b) { return a->sample_id < b->sample_id; });

    BenchmarkIndex index;
    std::set<std::uint64_t> seen;
    for (const SampleManifest* m : order) {
        if (!seen.insert(m->sample_id).second) {
            index.skipped.push_back({m->sample_id, std::nullopt, 0, "duplicate sample_id"});
            continue;
        }
        ++index.base_pairings[m->dataset];
        ++index.category_pairings[m->dataset][m->object_category];
        for (const auto kind : kinds) {
            for (const auto severity : severities) {
                VariantRecord v;
                v.sample_id = m->sample_id;
                v.object_category = m->object_category;
                v.affordance_type = m->affordance_type;
                v.dataset = m->dataset;
                v.kind = kind;
                v.severity = severity.value();
                v.cloud_path = variant_cloud_path(m->sample_id, kind, severity.value());
                v.lineage = Lineage{options.master_seed, m->sample_id, corruption_tag(kind, severity)};
                index.variants.push_back(std::move(v));
            }
        }
    }
    return index;
}

BenchmarkIndex build_benchmark(std::span<const SampleManifest> manifests, const std::filesystem::path& manifest_dir,
                               const std::filesystem::path& out_dir, const BenchmarkOptions& options) {
    BenchmarkIndex plan = plan_benchmark(manifests, options);

    // Group planned variants by sample so each base cloud is read once.
    std::vector<std::size_t> group_start;
    for (std::size_t i = 0; i < plan.variants.size(); ++i) {
        if (i == 0 || plan.variants[i].sample_id != plan.variants[i - 1].sample_id) {
            group_start.push_back(i);
        }
    }
    group_start.push_back(plan.variants.size());

    std::map<std::uint64_t, const SampleManifest*> by_id;
    for (const auto& m : manifests) {
        by_id.emplace(m.sample_id, &m);
    }

    const std::size_t groups = group_start.size() - 1;
    std::vector<std::vector<bool>> produced(groups);
    std::vector<std::vector<SkippedItem>> skips(groups);
    std::filesystem::create_directories(out_dir / "clouds");

    parallel_for(groups, options.threads, [&](std::size_t g) {
        const std::size_t begin = group_start[g];
        const std::size_t end = group_start[g + 1];
        produced[g].assign(end - begin, false);
        const std::uint64_t id = plan.variants[begin].sample_id;
        LabeledCloud base;
        try {
            base = io::read_cloud(resolve_path(manifest_dir, by_id.at(id)->cloud_path));
            require_valid(base);
        } catch (const Error& e) {
            skips[g].push_back({id, std::nullopt, 0, e.what()});
            return;
        }
        for (std::size_t i = begin; i < end; ++i) {
            const VariantRecord& v = plan.variants[i];
            try {
                const CorruptionSpec spec{v.kind, SeverityLevel(v.severity), RngStream(v.lineage)};
                io::write_cloud(out_dir / v.cloud_path, apply_corruption(base, spec));
                produced[g][i - begin] = true;
            } catch (const Error& e) {
                skips[g].push_back({id, v.kind, v.severity, e.what()});
            }
        }
    });

    BenchmarkIndex index;
    index.base_pairings = plan.base_pairings;
    index.category_pairings = plan.category_pairings;
    index.skipped = plan.skipped;
    for (std::size_t g = 0; g < groups; ++g) {
        for (std::size_t i = group_start[g]; i < group_start[g + 1]; ++i) {
            if (produced[g][i - group_start[g]]) {
                index.variants.push_back(plan.variants[i]);
            }
        }
        index.skipped.insert(index.skipped.end(), skips[g].begin(), skips[g].end());
    }
    std::stable_sort(index.skipped.begin(), index.skipped.end(),
                     [](const SkippedItem& a, const SkippedItem& b) { return a.sample_id < b.sample_id; });

    std::string lines;
    for (const auto& v : index.variants) {
        lines += variant_record_to_json(v) + "\n";
    }
    write_text(out_dir / "index.jsonl", lines);
    write_meta(out_dir / "meta.json", index, options);
    return index;
}

std::string variant_record_to_json(const VariantRecord& record) {
    ordered_json j;
    j["schema_version"] = kBenchmarkSchemaVersion;
    j["sample_id"] = record.sample_id;
    j["object_category"] = record.object_category;
    j["affordance_type"] = record.affordance_type;
    if (!record.dataset.empty()) {
        j["dataset"] = record.dataset;
    }
    j["kind"] = std::string(to_string(record.kind));
    j["severity"] = record.severity;
    j["cloud_path"] = record.cloud_path;
    j["lineage"] = {record.lineage.master_seed, record.lineage.sample_id, record.lineage.corruption_tag};
    return j.dump();
}

VariantRecord parse_variant_record(std::string_view json_line) {
    try {
        const json j = json::parse(json_line);
        if (j.value("schema_version", kBenchmarkSchemaVersion) > kBenchmarkSchemaVersion) {
            throw Error(ErrorCode::SchemaMismatch, "unsupported schema_version " + j.at("schema_version").dump());
        }
        // Reuse the manifest validator for the shared fields.
        json base = j;
        base.erase("kind");
        base.erase("severity");
        base.erase("lineage");
        base.erase("schema_version");
        const SampleManifest m = io::parse_manifest_record(base.dump());

        VariantRecord v;
        v.sample_id = m.sample_id;
        v.object_category = m.object_category;
        v.affordance_type = m.affordance_type;
        v.dataset = m.dataset;
        v.cloud_path = m.cloud_path;
        const auto kind = parse_corruption_kind(j.at("kind").get<std::string>());
        if (!kind) {
            throw Error(ErrorCode::SchemaMismatch, "unknown corruption kind " + j.at("kind").dump());
        }
        v.kind = *kind;
        v.severity = SeverityLevel(j.at("severity").get<int>()).value();
        const auto lineage = j.at("lineage").get<std::vector<std::uint64_t>>();
        if (lineage.size() != 3) {
            throw Error(ErrorCode::SchemaMismatch, "lineage must have 3 entries");
        }
        v.lineage = Lineage{lineage[0], lineage[1], lineage[2]};
        return v;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, std::string("invalid variant record: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidConfig) {
            throw Error(ErrorCode::SchemaMismatch, e.detail());
        }
        throw;
    }
}

std::filesystem::path resolve_path(const std::filesystem::path& base, const std::string& path) {
    const std::filesystem::path p(path);
    return p.is_absolute() ? p : base / p;
}

std::string sample_stem(const SampleRef& ref) {
    if (ref.corruption == "clean") {
        return std::to_string(ref.sample_id);
    }
    return std::to_string(ref.sample_id) + "_" + ref.corruption + "_s" + std::to_string(ref.severity);
}

std::vector<SampleRef> load_sample_refs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    const std::filesystem::path base = path.parent_path();
    std::vector<SampleRef> refs;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            SampleRef ref;
            if (line.find("\"kind\"") != std::string::npos) {
                const VariantRecord v = parse_variant_record(line);
                ref.sample_id = v.sample_id;
                ref.object_category = v.object_category;
                ref.affordance_type = v.affordance_type;
                ref.corruption = std::string(to_string(v.kind));
                ref.severity = v.severity;
                ref.cloud_path = resolve_path(base, v.cloud_path);
            } else {
                const SampleManifest m = io::parse_manifest_record(line);
                ref.sample_id = m.sample_id;
                ref.object_category = m.object_category;
                ref.affordance_type = m.affordance_type;
                ref.cloud_path = resolve_path(base, m.cloud_path);
                if (m.prediction_path) {
                    ref.prediction_path = resolve_path(base, *m.prediction_path);
                }
            }
            refs.push_back(std::move(ref));
        } catch (const Error& e) {
            throw Error(e.code(), path.string() + ":" + std::to_string(line_number) + ": " + e.detail());
        }
    }
    return refs;
}

} // namespace splatbench
