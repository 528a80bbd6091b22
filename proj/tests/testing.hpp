// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "splatbench/cloud.hpp"
#include "splatbench/io/container.hpp"
#include "splatbench/io/manifest_io.hpp"
#include "splatbench/rng.hpp"
#include "splatbench/vocabulary.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unistd.h>
#include <string>
#include <vector>

namespace splatbench::testutil {

// Test data comes from std::mt19937_64 so it never shares code with the
// generator under test.
inline LabeledCloud random_cloud(std::size_t n, std::uint64_t seed, double extent = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> coord(-extent, extent);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    LabeledCloud cloud;
    for (std::size_t i = 0; i < n; ++i) {
        cloud.points.push_back({coord(gen), coord(gen), coord(gen)});
        cloud.labels.push_back(unit(gen) < 0.3 ? unit(gen) : 0.0);
    }
    return cloud;
}

inline std::vector<double> random_scores(std::size_t n, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = unit(gen);
    return v;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("splatbench_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

/// Writes n random clouds and a manifest referencing them; returns the manifest path.
inline std::filesystem::path write_sample_set(const std::filesystem::path& dir, std::size_t n,
                                              std::size_t points = 2048, std::uint64_t seed = 1) {
    const auto categories = object_categories();
    std::vector<SampleManifest> records;
    for (std::size_t i = 0; i < n; ++i) {
        SampleManifest m;
        m.sample_id = 100 + i;
        m.object_category = std::string(categories[i % categories.size()]);
        m.affordance_type = "grasp";
        m.cloud_path = "clouds/" + std::to_string(m.sample_id) + ".pcaf";
        m.dataset = "PIAD-C";
        io::write_cloud(dir / m.cloud_path, random_cloud(points, seed + i));
        records.push_back(m);
    }
    const auto path = dir / "manifest.jsonl";
    io::write_manifest(path, records);
    return path;
}

/// Relative path -> file bytes for every regular file below root.
inline std::map<std::string, std::string> snapshot(const std::filesystem::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        files[std::filesystem::relative(entry.path(), root).string()] = buf.str();
    }
    return files;
}

inline std::vector<double> read_golden(const std::string& name) {
    std::ifstream in(std::string(SPLATBENCH_GOLDEN_DIR) + "/" + name);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) values.push_back(std::stod(line));
    }
    return values;
}

} // namespace splatbench::testutil
