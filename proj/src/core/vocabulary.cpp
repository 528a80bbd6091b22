// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/vocabulary.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>

namespace splatbench {

namespace {

// Mirrors data/vocabulary/piad_c.csv; a unit test keeps the two in sync.
constexpr std::array<CategoryStats, 23> kPiadC{{
    {"Earphone", "listen;grasp", 70},
    {"Bag", "contain;open;grasp;lift", 50},
    {"Chair", "move;support;sit", 587},
    {"Refrigerator", "contain;open", 53},
    {"Knife", "stab;cut;grasp", 138},
    {"Dishwasher", "contain;open", 39},
    {"Keyboard", "press", 25},
    {"Scissors", "stab;cut;grasp", 29},
    {"Table", "move;support", 194},
    {"StorageFurniture", "contain;open", 92},
    {"Bottle", "contain;wrap_grasp;open;grasp;pour", 273},
    {"Bowl", "contain;wrap_grasp;pour", 83},
    {"Microwave", "contain;open", 47},
    {"Display", "display", 52},
    {"TrashCan", "contain;open;pour", 69},
    {"Hat", "wear;grasp", 66},
    {"Clock", "display", 9},
    {"Door", "open;push", 47},
    {"Mug", "contain;wrap_grasp;grasp;pour", 126},
    {"Faucet", "open;grasp", 95},
    {"Vase", "contain;wrap_grasp;pour", 134},
    {"Laptop", "press;display", 112},
    {"Bed", "lay;support;sit", 84},
}};

// Mirrors data/vocabulary/laso_c.csv.
constexpr std::array<CategoryStats, 23> kLasoC{{
    {"Door", "open;push;pull", 35},
    {"Clock", "display", 34},
    {"Dishwasher", "open;contain", 20},
    {"Earphone", "listen;grasp", 28},
    {"Vase", "contain;pour;wrap_grasp", 167},
    {"Knife", "stab;grasp;cut", 59},
    {"Bowl", "contain;pour;wrap_grasp", 36},
    {"Bag", "open;contain;lift;grasp", 25},
    {"Faucet", "open;grasp", 80},
    {"Scissors", "stab;grasp;cut", 11},
    {"Display", "display", 58},
    {"Chair", "sit;support;move", 858},
    {"Bottle", "grasp;wrap_grasp;open;contain;pour", 122},
    {"Microwave", "open;contain", 23},
    {"StorageFurniture", "open;contain", 183},
    {"Refrigerator", "open;contain", 23},
    {"Mug", "contain;grasp;pour;wrap_grasp", 45},
    {"Keyboard", "press", 10},
    {"Table", "support;move", 431},
    {"Bed", "sit;support;lay", 36},
    {"Hat", "wear;grasp", 26},
    {"Laptop", "display;press", 55},
    {"TrashCan", "open;contain;pour", 51},
}};

constexpr std::array<std::string_view, 23> kCategories{
    "Bag",       "Bed",      "Bottle",       "Bowl",   "Chair",    "Clock",     "Dishwasher", "Display",
    "Door",      "Earphone", "Faucet",       "Hat",    "Keyboard", "Knife",     "Laptop",     "Microwave",
    "Mug",       "Refrigerator", "Scissors", "StorageFurniture", "Table", "TrashCan", "Vase",
};

constexpr std::array<std::string_view, 18> kAffordances{
    "contain", "cut",  "display", "grasp", "lay",  "lift", "listen",     "move", "open",
    "pour",    "press", "pull",   "push",  "sit",  "stab", "support", "wear", "wrap_grasp",
};

} // namespace

std::string_view to_string(Dataset dataset) {
    return dataset == Dataset::PiadC ? "PIAD-C" : "LASO-C";
}

std::optional<Dataset> parse_dataset(std::string_view name) {
    if (name == "PIAD-C" || name == "piad-c" || name == "PIAD" || name == "piad") {
        return Dataset::PiadC;
    }
    if (name == "LASO-C" || name == "laso-c" || name == "LASO" || name == "laso") {
        return Dataset::LasoC;
    }
    return std::nullopt;
}

std::span<const CategoryStats> dataset_statistics(Dataset dataset) {
    if (dataset == Dataset::PiadC) {
        return kPiadC;
    }
    return kLasoC;
}

int total_pairings(Dataset dataset) {
    const auto stats = dataset_statistics(dataset);
    return std::accumulate(stats.begin(), stats.end(), 0,
                           [](int acc, const CategoryStats& row) { return acc + row.pairings; });
}

std::span<const std::string_view> object_categories() { return kCategories; }

std::span<const std::string_view> affordance_types() { return kAffordances; }

bool is_known_category(std::string_view name) {
    return std::find(kCategories.begin(), kCategories.end(), name) != kCategories.end();
}

std::optional<std::string> canonical_affordance(std::string_view name) {
    std::string canonical(name);
    std::replace(canonical.begin(), canonical.end(), '-', '_');
    std::transform(canonical.begin(), canonical.end(), canonical.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (std::find(kAffordances.begin(), kAffordances.end(), canonical) == kAffordances.end()) {
        return std::nullopt;
    }
    return canonical;
}

} // namespace splatbench
