// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace splatbench {

/// One dataset record. Paths are stored as written; loaders resolve them
/// relative to the manifest file.
struct SampleManifest {
    std::uint64_t sample_id = 0;
    std::string object_category;
    std::string affordance_type;
    std::string cloud_path;
    std::optional<std::string> prediction_path;
    std::string dataset; // "PIAD-C", "LASO-C" or empty
    std::string split;   // free-form split tag, e.g. "seen/test"

    friend bool operator==(const SampleManifest&, const SampleManifest&) = default;
};

} // namespace splatbench
