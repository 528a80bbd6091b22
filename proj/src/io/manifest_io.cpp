// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/io/manifest_io.hpp"

#include "splatbench/error.hpp"
#include "splatbench/vocabulary.hpp"

#include <json.hpp>

#include <fstream>

namespace splatbench::io {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const json& require_field(const json& record, const char* key) {
    const auto it = record.find(key);
    if (it == record.end()) {
        throw Error(ErrorCode::SchemaMismatch, std::string("missing field '") + key + "'");
    }
    return *it;
}

std::string require_string(const json& record, const char* key) {
    const json& value = require_field(record, key);
    if (!value.is_string()) {
        throw Error(ErrorCode::SchemaMismatch, std::string("field '") + key + "' must be a string");
    }
    return value.get<std::string>();
}

std::string optional_string(const json& record, const char* key) {
    const auto it = record.find(key);
    if (it == record.end() || it->is_null()) {
        return {};
    }
    if (!it->is_string()) {
        throw Error(ErrorCode::SchemaMismatch, std::string("field '") + key + "' must be a string");
    }
    return it->get<std::string>();
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find(sep, start);
        const std::size_t stop = end == std::string_view::npos ? text.size() : end;
        parts.emplace_back(text.substr(start, stop - start));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return parts;
}

} // namespace

SampleManifest parse_manifest_record(std::string_view json_line) {
    json record;
    try {
        record = json::parse(json_line);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) {
        throw Error(ErrorCode::SchemaMismatch, "manifest record must be a JSON object");
    }
    if (const auto it = record.find("schema_version"); it != record.end()) {
        if (!it->is_number_integer() || it->get<long long>() < 1 || it->get<long long>() > kManifestSchemaVersion) {
            throw Error(ErrorCode::SchemaMismatch, "unsupported schema_version " + it->dump());
        }
    }

    SampleManifest m;
    const json& id = require_field(record, "sample_id");
    if (!id.is_number_integer() || (id.is_number_integer() && !id.is_number_unsigned() && id.get<long long>() < 0)) {
        throw Error(ErrorCode::SchemaMismatch, "sample_id must be a non-negative integer");
    }
    m.sample_id = id.get<std::uint64_t>();
    m.object_category = require_string(record, "object_category");
    if (!is_known_category(m.object_category)) {
        throw Error(ErrorCode::UnknownCategory, "unknown object category '" + m.object_category + "'");
    }
    const std::string affordance = require_string(record, "affordance_type");
    const auto canonical = canonical_affordance(affordance);
    if (!canonical) {
        throw Error(ErrorCode::UnknownCategory, "unknown affordance type '" + affordance + "'");
    }
    m.affordance_type = *canonical;
    m.cloud_path = require_string(record, "cloud_path");
    if (auto prediction = optional_string(record, "prediction_path"); !prediction.empty()) {
        m.prediction_path = std::move(prediction);
    }
    m.dataset = optional_string(record, "dataset");
    m.split = optional_string(record, "split");
    return m;
}

std::string manifest_record_to_json(const SampleManifest& record) {
    ordered_json j;
    j["schema_version"] = kManifestSchemaVersion;
    j["sample_id"] = record.sample_id;
    j["object_category"] = record.object_category;
    j["affordance_type"] = record.affordance_type;
    j["cloud_path"] = record.cloud_path;
    if (record.prediction_path) {
        j["prediction_path"] = *record.prediction_path;
    }
    if (!record.dataset.empty()) {
        j["dataset"] = record.dataset;
    }
    if (!record.split.empty()) {
        j["split"] = record.split;
    }
    return j.dump();
}

std::vector<SampleManifest> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open manifest " + path.string());
    }
    std::vector<SampleManifest> records;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            records.push_back(parse_manifest_record(line));
        } catch (const Error& e) {
            throw Error(e.code(), path.string() + ":" + std::to_string(line_number) + ": " + e.detail());
        }
    }
    return records;
}

void write_manifest(const std::filesystem::path& path, std::span<const SampleManifest> records) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoFailure, "cannot write manifest " + path.string());
    }
    for (const auto& r : records) {
        out << manifest_record_to_json(r) << '\n';
    }
}

std::vector<SampleManifest> synthesize_dataset_manifest(std::string_view dataset, std::uint64_t first_id) {
    const auto which = parse_dataset(dataset);
    if (!which) {
        throw Error(ErrorCode::InvalidConfig, "unknown dataset '" + std::string(dataset) + "'");
    }
    const std::string name(to_string(*which));
    std::vector<SampleManifest> records;
    std::uint64_t id = first_id;
    for (const auto& row : dataset_statistics(*which)) {
        const auto affordances = split(row.affordances, ';');
        for (int k = 0; k < row.pairings; ++k) {
            SampleManifest m;
            m.sample_id = id;
            m.object_category = std::string(row.category);
            m.affordance_type = affordances[static_cast<std::size_t>(k) % affordances.size()];
            m.cloud_path = name + "/" + std::to_string(id) + ".pcaf";
            m.dataset = name;
            m.split = "seen/test";
            records.push_back(std::move(m));
            ++id;
        }
    }
    return records;
}

} // namespace splatbench::io
