// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "splatbench/corrupt.hpp"
#include "splatbench/manifest.hpp"
#include "splatbench/rng.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace splatbench {

inline constexpr int kBenchmarkSchemaVersion = 1;

struct BenchmarkOptions {
    std::uint64_t master_seed = 0;
    std::vector<CorruptionKind> kinds{kAllCorruptionKinds.begin(), kAllCorruptionKinds.end()};
    std::vector<int> severities{1, 2, 3, 4, 5};
    unsigned threads = 0;
};

/// One corrupted variant. cloud_path is relative to the benchmark directory.
struct VariantRecord {
    std::uint64_t sample_id = 0;
    std::string object_category;
    std::string affordance_type;
    std::string dataset;
    CorruptionKind kind = CorruptionKind::Jitter;
    int severity = 1;
    std::string cloud_path;
    Lineage lineage;
    friend bool operator==(const VariantRecord&, const VariantRecord&) = default;
};

/// A sample or a single variant that could not be produced. Whole-sample
/// skips (unreadable cloud, duplicate id) leave kind empty.
struct SkippedItem {
    std::uint64_t sample_id = 0;
    std::optional<CorruptionKind> kind;
    int severity = 0;
    std::string reason;
};

struct BenchmarkIndex {
    std::vector<VariantRecord> variants;
    std::vector<SkippedItem> skipped;
    /// Distinct base pairings per dataset tag ("" for untagged records).
    std::map<std::string, std::size_t> base_pairings;
    /// dataset -> category -> pairings.
    std::map<std::string, std::map<std::string, std::size_t>> category_pairings;

    std::size_t total_base_pairings() const;
};

/// Variant file name inside the benchmark directory: clouds/<id>_<kind>_s<sev>.pcaf
std::string variant_cloud_path(std::uint64_t sample_id, CorruptionKind kind, int severity);

/// Enumerates the variants without touching any cloud. Records are ordered by
/// (sample_id, kind, severity); duplicate sample ids after the first are skipped.
/// Throws Error(InvalidConfig) for empty kind/severity lists or bad severities.
BenchmarkIndex plan_benchmark(std::span<const SampleManifest> manifests, const BenchmarkOptions& options);

/// Generates every planned variant. Cloud paths in the manifests are resolved
/// against manifest_dir. Writes out_dir/clouds/*.pcaf, out_dir/index.jsonl and
/// out_dir/meta.json. Per-sample and per-variant failures land in the skip list.
BenchmarkIndex build_benchmark(std::span<const SampleManifest> manifests, const std::filesystem::path& manifest_dir,
                               const std::filesystem::path& out_dir, const BenchmarkOptions& options);

std::string variant_record_to_json(const VariantRecord& record);
VariantRecord parse_variant_record(std::string_view json_line);

/// Relative paths are taken relative to base; absolute paths pass through.
std::filesystem::path resolve_path(const std::filesystem::path& base, const std::string& path);

/// A sample to render or evaluate: either a clean manifest entry or a benchmark variant.
struct SampleRef {
    std::uint64_t sample_id = 0;
    std::string object_category;
    std::string affordance_type;
    std::string corruption = "clean";
    int severity = 0;
    std::filesystem::path cloud_path; // resolved
    std::optional<std::filesystem::path> prediction_path; // resolved
};

/// Output file stem: "<id>" for clean samples, "<id>_<kind>_s<sev>" for variants.
std::string sample_stem(const SampleRef& ref);

/// Loads either a sample manifest or a benchmark index (records with a "kind"
/// field). Paths are resolved against the file's directory.
std::vector<SampleRef> load_sample_refs(const std::filesystem::path& path);

} // namespace splatbench
