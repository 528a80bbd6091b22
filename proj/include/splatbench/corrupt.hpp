// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "splatbench/cloud.hpp"
#include "splatbench/rng.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace splatbench {

enum class CorruptionKind { Jitter, Scale, Rotate, DropGlobal, DropLocal, AddGlobal, AddLocal };

inline constexpr std::array<CorruptionKind, 7> kAllCorruptionKinds{
    CorruptionKind::Jitter,     CorruptionKind::Scale,     CorruptionKind::Rotate,   CorruptionKind::DropGlobal,
    CorruptionKind::DropLocal,  CorruptionKind::AddGlobal, CorruptionKind::AddLocal,
};

/// Machine name used in files and flags: "jitter", "drop_global", ...
std::string_view to_string(CorruptionKind kind);
/// Table label: "Jitter", "Drop-G", "Add-L", ...
std::string_view display_name(CorruptionKind kind);
/// Accepts machine names, table labels and camel case, case-insensitively.
std::optional<CorruptionKind> parse_corruption_kind(std::string_view name);

class SeverityLevel {
public:
    static constexpr int kMin = 1;
    static constexpr int kMax = 5;

    /// Throws Error(InvalidConfig) outside [1, 5].
    explicit SeverityLevel(int level);

    int value() const noexcept { return level_; }
    std::size_t index() const noexcept { return static_cast<std::size_t>(level_ - 1); }

    friend bool operator==(SeverityLevel, SeverityLevel) = default;

private:
    int level_;
};

/// Per-severity parameters; index 0 is severity 1 (mildest).
struct SeverityTable {
    static constexpr std::array<double, 5> jitter_sigma{0.01, 0.02, 0.03, 0.04, 0.05};
    static constexpr std::array<double, 5> scale_range{1.6, 1.7, 1.8, 1.9, 2.0};
    static constexpr std::array<double, 5> rotate_theta{
        std::numbers::pi / 30.0, std::numbers::pi / 15.0, std::numbers::pi / 10.0,
        std::numbers::pi / 7.5,  std::numbers::pi / 6.0,
    };
    /// Drop ratios in thousandths so drop counts are exact integer arithmetic.
    static constexpr std::array<std::uint32_t, 5> drop_global_permille{250, 375, 500, 675, 750};
    static constexpr std::array<std::size_t, 5> drop_local_count{100, 200, 300, 400, 500};
    static constexpr std::array<std::size_t, 5> add_global_count{10, 20, 30, 40, 50};
    static constexpr std::array<std::size_t, 5> add_local_count{100, 200, 300, 400, 500};

    static constexpr std::size_t kMaxClusters = 8;
    static constexpr double kAddLocalSigmaMin = 0.075;
    static constexpr double kAddLocalSigmaMax = 0.125;
};

/// Third lineage component for a (kind, severity) variant: (ordinal + 1) << 8 | severity.
std::uint64_t corruption_tag(CorruptionKind kind, SeverityLevel severity) noexcept;

struct CorruptionSpec {
    CorruptionKind kind;
    SeverityLevel severity;
    RngStream stream;
};

CorruptionSpec make_corruption_spec(CorruptionKind kind, SeverityLevel severity, std::uint64_t master_seed,
                                    std::uint64_t sample_id);

/// Random parameters drawn while applying a corruption. Only the fields
/// relevant to the corruption kind are filled.
struct CorruptionTrace {
    std::array<double, 3> scale_factors{1.0, 1.0, 1.0};
    std::array<double, 3> euler_angles{0.0, 0.0, 0.0};
    std::vector<std::size_t> cluster_sizes;
    std::vector<std::size_t> center_indices; // indices into the input cloud
    std::vector<double> cluster_sigmas;
};

LabeledCloud jitter(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace* trace = nullptr);
LabeledCloud scale(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace* trace = nullptr);
LabeledCloud rotate(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace* trace = nullptr);
LabeledCloud drop_global(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace* trace = nullptr);
LabeledCloud drop_local(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace* trace = nullptr);
LabeledCloud add_global(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace* trace = nullptr);
LabeledCloud add_local(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace* trace = nullptr);

/// Dispatches on spec.kind.
LabeledCloud apply_corruption(const LabeledCloud& cloud, const CorruptionSpec& spec,
                              CorruptionTrace* trace = nullptr);

// Parameterized building blocks. The sampling entry points above draw their
// parameters and delegate here; tests call these directly to pin parameters.

LabeledCloud add_gaussian_noise(const LabeledCloud& cloud, double sigma, RngStream& stream);

/// Centers on the centroid and divides by the largest point norm.
/// Throws Error(DegenerateCloud) for empty clouds or zero extent.
LabeledCloud normalize_to_unit_sphere(const LabeledCloud& cloud);

/// Per-axis scaling followed by unit-sphere normalization.
LabeledCloud scale_axes(const LabeledCloud& cloud, const std::array<double, 3>& factors);


/// R = Rz(gamma) * Ry(beta) * Rx(alpha): extrinsic rotations about X, then Y, then Z.
Mat3 euler_rotation(double alpha, double beta, double gamma);
LabeledCloud rotate_euler(const LabeledCloud& cloud, const std::array<double, 3>& angles);

/// Fisher-Yates shuffle of the (point, label) pairs, then truncation to `keep` pairs.
LabeledCloud shuffle_and_truncate(const LabeledCloud& cloud, std::size_t keep, RngStream& stream);

/// round(n * rho) with half-away-from-zero rounding, in exact integer arithmetic.
std::size_t drop_global_count(std::size_t n, SeverityLevel severity) noexcept;

/// Splits `total` into `clusters` sizes >= 1 from normalized uniform weights.
/// The last cluster absorbs the rounding residue.
std::vector<std::size_t> partition_count(std::size_t total, std::size_t clusters, RngStream& stream);

/// Sequential cluster removal: for each size, pick a center uniformly among the
/// remaining points and remove that many nearest remaining points (the center
/// included). Survivors keep their input order.
LabeledCloud remove_local_clusters(const LabeledCloud& cloud, std::span<const std::size_t> sizes,
                                   RngStream& stream, CorruptionTrace* trace = nullptr);

/// Appends `count` points uniformly distributed in the unit ball, label 0.
LabeledCloud append_uniform_ball(const LabeledCloud& cloud, std::size_t count, RngStream& stream);

/// Picks sizes.size() distinct centers from the input (partial Fisher-Yates), then
/// appends sizes[i] points ~ N(center_i, sigma_i^2 I), sigma_i ~ U(0.075, 0.125), label 0.
LabeledCloud append_local_clusters(const LabeledCloud& cloud, std::span<const std::size_t> sizes,
                                   RngStream& stream, CorruptionTrace* trace = nullptr);

/// Output size predicted by the count law for this kind and severity.
std::size_t expected_point_count(CorruptionKind kind, SeverityLevel severity, std::size_t n) noexcept;

} // namespace splatbench
