// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace splatbench {

enum class Dataset { PiadC, LasoC };

std::string_view to_string(Dataset dataset);
std::optional<Dataset> parse_dataset(std::string_view name);

/// One row of a dataset statistics table: category, its affordances
/// (semicolon separated, canonical spelling) and the object-affordance pairing count.
struct CategoryStats {
    std::string_view category;
    std::string_view affordances;
    int pairings;
};

std::span<const CategoryStats> dataset_statistics(Dataset dataset);
int total_pairings(Dataset dataset);

/// The closed object-category vocabulary (23 names).
std::span<const std::string_view> object_categories();

/// The closed affordance vocabulary, canonical spellings.
std::span<const std::string_view> affordance_types();

bool is_known_category(std::string_view name);

/// Canonical spelling of an affordance name ("wrap-grasp" -> "wrap_grasp"),
/// or nullopt when the name is not in the vocabulary.
std::optional<std::string> canonical_affordance(std::string_view name);

} // namespace splatbench
