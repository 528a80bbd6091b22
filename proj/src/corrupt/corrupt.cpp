// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/corrupt.hpp"

#include "splatbench/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace splatbench {

namespace {

struct KindNames {
    CorruptionKind kind;
    std::string_view machine;
    std::string_view display;
    std::string_view camel;
};

constexpr std::array<KindNames, 7> kKindNames{{
    {CorruptionKind::Jitter, "jitter", "Jitter", "jitter"},
    {CorruptionKind::Scale, "scale", "Scale", "scale"},
    {CorruptionKind::Rotate, "rotate", "Rotate", "rotate"},
    {CorruptionKind::DropGlobal, "drop_global", "Drop-G", "dropglobal"},
    {CorruptionKind::DropLocal, "drop_local", "Drop-L", "droplocal"},
    {CorruptionKind::AddGlobal, "add_global", "Add-G", "addglobal"},
    {CorruptionKind::AddLocal, "add_local", "Add-L", "addlocal"},
}};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void require_kind(const CorruptionSpec& spec, CorruptionKind expected) {
    if (spec.kind != expected) {
        throw Error(ErrorCode::InvalidConfig, "corruption spec kind " + std::string(to_string(spec.kind)) +
                                                  " passed to " + std::string(to_string(expected)));
    }
}

LabeledCloud gather(const LabeledCloud& cloud, std::span<const std::size_t> indices) {
    LabeledCloud out;
    out.points.reserve(indices.size());
    out.labels.reserve(indices.size());
    for (const std::size_t i : indices) {
        out.points.push_back(cloud.points[i]);
        out.labels.push_back(cloud.labels[i]);
    }
    return out;
}

} // namespace

std::string_view to_string(CorruptionKind kind) {
    return kKindNames[static_cast<std::size_t>(kind)].machine;
}

std::string_view display_name(CorruptionKind kind) {
    return kKindNames[static_cast<std::size_t>(kind)].display;
}

std::optional<CorruptionKind> parse_corruption_kind(std::string_view name) {
    const std::string key = lower(name);
    std::string squashed;
    for (const char c : key) {
        if (c != '_' && c != '-') {
            squashed.push_back(c);
        }
    }
    for (const auto& names : kKindNames) {
        if (key == names.machine || key == lower(names.display) || squashed == names.camel) {
            return names.kind;
        }
    }
    // Table labels abbreviate: drop-g, add-l.
    if (squashed == "dropg") return CorruptionKind::DropGlobal;
    if (squashed == "dropl") return CorruptionKind::DropLocal;
    if (squashed == "addg") return CorruptionKind::AddGlobal;
    if (squashed == "addl") return CorruptionKind::AddLocal;
    return std::nullopt;
}

SeverityLevel::SeverityLevel(int level) : level_(level) {
    if (level < kMin || level > kMax) {
        throw Error(ErrorCode::InvalidConfig, "severity must be in [1, 5], got " + std::to_string(level));
    }
}

std::uint64_t corruption_tag(CorruptionKind kind, SeverityLevel severity) noexcept {
    return ((static_cast<std::uint64_t>(kind) + 1) << 8) | static_cast<std::uint64_t>(severity.value());
}

CorruptionSpec make_corruption_spec(CorruptionKind kind, SeverityLevel severity, std::uint64_t master_seed,
                                    std::uint64_t sample_id) {
    return CorruptionSpec{kind, severity, derive_stream(master_seed, sample_id, corruption_tag(kind, severity))};
}

// ---------------------------------------------------------------------------
// Building blocks

LabeledCloud add_gaussian_noise(const LabeledCloud& cloud, double sigma, RngStream& stream) {
    LabeledCloud out = cloud;
    for (auto& p : out.points) {
        for (double& coord : p) {
            coord += sigma * stream.normal();
        }
    }
    return out;
}

LabeledCloud normalize_to_unit_sphere(const LabeledCloud& cloud) {
    if (cloud.empty()) {
        throw Error(ErrorCode::DegenerateCloud, "cannot normalize an empty cloud");
    }
    const Vec3 c = centroid(cloud.points);
    LabeledCloud out = cloud;
    double max_norm = 0.0;
    for (auto& p : out.points) {
        p = p - c;
        max_norm = std::max(max_norm, norm(p));
    }
    if (!(max_norm > 0.0) || !std::isfinite(max_norm)) {
        throw Error(ErrorCode::DegenerateCloud, "all points coincide after centering");
    }
    const double inv = 1.0 / max_norm;
    for (auto& p : out.points) {
        p = inv * p;
    }
    return out;
}

LabeledCloud scale_axes(const LabeledCloud& cloud, const std::array<double, 3>& factors) {
    LabeledCloud out = cloud;
    for (auto& p : out.points) {
        for (int axis = 0; axis < 3; ++axis) {
            p[axis] *= factors[axis];
        }
    }
    return normalize_to_unit_sphere(out);
}

Mat3 euler_rotation(double alpha, double beta, double gamma) {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta);
    const double cg = std::cos(gamma), sg = std::sin(gamma);
    // Rz(gamma) * Ry(beta) * Rx(alpha), expanded.
    return Mat3{{
        {cg * cb, cg * sb * sa - sg * ca, cg * sb * ca + sg * sa},
        {sg * cb, sg * sb * sa + cg * ca, sg * sb * ca - cg * sa},
        {-sb, cb * sa, cb * ca},
    }};
}

LabeledCloud rotate_euler(const LabeledCloud& cloud, const std::array<double, 3>& angles) {
    const Mat3 r = euler_rotation(angles[0], angles[1], angles[2]);
    LabeledCloud out = cloud;
    for (auto& p : out.points) {
        const Vec3 q = p;
        for (int row = 0; row < 3; ++row) {
            p[row] = r[row][0] * q[0] + r[row][1] * q[1] + r[row][2] * q[2];
        }
    }
    return out;
}

LabeledCloud shuffle_and_truncate(const LabeledCloud& cloud, std::size_t keep, RngStream& stream) {
    std::vector<std::size_t> order(cloud.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) {
        const std::size_t j = stream.index(i);
        std::swap(order[i - 1], order[j]);
    }
    order.resize(std::min(keep, order.size()));
    return gather(cloud, order);
}

std::size_t drop_global_count(std::size_t n, SeverityLevel severity) noexcept {
    const std::size_t permille = SeverityTable::drop_global_permille[severity.index()];
    return (n * permille + 500) / 1000;
}

std::vector<std::size_t> partition_count(std::size_t total, std::size_t clusters, RngStream& stream) {
    if (clusters == 0 || total < clusters) {
        throw Error(ErrorCode::InvalidConfig, "cannot split " + std::to_string(total) + " points into " +
                                                  std::to_string(clusters) + " non-empty clusters");
    }
    std::vector<double> weights(clusters);
    for (double& w : weights) {
        w = stream.uniform();
    }
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(sum > 0.0)) {
        std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(clusters));
    } else {
        for (double& w : weights) {
            w /= sum;
        }
    }

    std::vector<std::size_t> sizes(clusters);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i + 1 < clusters; ++i) {
        const auto rounded = static_cast<std::size_t>(std::round(static_cast<double>(total) * weights[i]));
        // Leave at least one point for every later cluster.
        const std::size_t cap = total - assigned - (clusters - 1 - i);
        sizes[i] = std::min(std::max<std::size_t>(1, rounded), cap);
        assigned += sizes[i];
    }
    sizes.back() = total - assigned;
    return sizes;
}

LabeledCloud remove_local_clusters(const LabeledCloud& cloud, std::span<const std::size_t> sizes,
                                   RngStream& stream, CorruptionTrace* trace) {
    std::vector<std::size_t> remaining(cloud.size());
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    std::vector<char> removed(cloud.size(), 0);

    struct Candidate {
        double distance_sq;
        bool is_center;
        std::size_t index;
    };
    auto closer = [](const Candidate& a, const Candidate& b) {
        if (a.distance_sq != b.distance_sq) return a.distance_sq < b.distance_sq;
        if (a.is_center != b.is_center) return a.is_center;
        return a.index < b.index;
    };

    std::vector<Candidate> candidates;
    for (const std::size_t count : sizes) {
        if (count > remaining.size()) {
            throw Error(ErrorCode::CloudTooSmall, "cluster of " + std::to_string(count) + " exceeds " +
                                                      std::to_string(remaining.size()) + " remaining points");
        }
        const std::size_t center = remaining[stream.index(remaining.size())];
        if (trace) {
            trace->center_indices.push_back(center);
        }
        const Vec3& c = cloud.points[center];
        candidates.clear();
        candidates.reserve(remaining.size());
        for (const std::size_t i : remaining) {
            const Vec3 d = cloud.points[i] - c;
            candidates.push_back({dot(d, d), i == center, i});
        }
        if (count < candidates.size()) {
            std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(count),
                             candidates.end(), closer);
        }
        for (std::size_t k = 0; k < count; ++k) {
            removed[candidates[k].index] = 1;
        }
        std::erase_if(remaining, [&](std::size_t i) { return removed[i] != 0; });
    }
    return gather(cloud, remaining);
}

LabeledCloud append_uniform_ball(const LabeledCloud& cloud, std::size_t count, RngStream& stream) {
    LabeledCloud out = cloud;
    out.points.reserve(cloud.size() + count);
    out.labels.reserve(cloud.size() + count);
    for (std::size_t k = 0; k < count; ++k) {
        Vec3 direction{0.0, 0.0, 0.0};
        double length = 0.0;
        while (!(length > 0.0)) {
            direction = {stream.normal(), stream.normal(), stream.normal()};
            length = norm(direction);
        }
        const double radius = std::cbrt(stream.uniform());
        Vec3 p = (radius / length) * direction;
        // Keep points float-representable and inside the ball after storage.
        for (;;) {
            const Vec3 stored{static_cast<double>(static_cast<float>(p[0])),
                              static_cast<double>(static_cast<float>(p[1])),
                              static_cast<double>(static_cast<float>(p[2]))};
            if (norm(stored) <= 1.0) {
                p = stored;
                break;
            }
            p = (1.0 - 1e-7) * p;
        }
        out.points.push_back(p);
        out.labels.push_back(0.0);
    }
    return out;
}

LabeledCloud append_local_clusters(const LabeledCloud& cloud, std::span<const std::size_t> sizes,
                                   RngStream& stream, CorruptionTrace* trace) {
    const std::size_t n = cloud.size();
    if (n < sizes.size() || sizes.empty()) {
        throw Error(ErrorCode::CloudTooSmall, "need at least " + std::to_string(sizes.size()) +
                                                  " points to place cluster centers, have " + std::to_string(n));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::size_t j = i + stream.index(n - i);
        std::swap(order[i], order[j]);
    }

    const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    LabeledCloud out = cloud;
    out.points.reserve(n + total);
    out.labels.reserve(n + total);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const Vec3 center = cloud.points[order[i]];
        const double sigma = stream.uniform(SeverityTable::kAddLocalSigmaMin, SeverityTable::kAddLocalSigmaMax);
        if (trace) {
            trace->center_indices.push_back(order[i]);
            trace->cluster_sigmas.push_back(sigma);
        }
        for (std::size_t k = 0; k < sizes[i]; ++k) {
            const double dx = stream.normal();
            const double dy = stream.normal();
            const double dz = stream.normal();
            out.points.push_back(center + sigma * Vec3{dx, dy, dz});
            out.labels.push_back(0.0);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampling entry points

LabeledCloud jitter(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace*) {
    require_kind(spec, CorruptionKind::Jitter);
    RngStream stream = spec.stream;
    return add_gaussian_noise(cloud, SeverityTable::jitter_sigma[spec.severity.index()], stream);
}

LabeledCloud scale(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace* trace) {
    require_kind(spec, CorruptionKind::Scale);
    RngStream stream = spec.stream;
    const double range = SeverityTable::scale_range[spec.severity.index()];
    std::array<double, 3> factors{};
    for (double& s : factors) {
        s = stream.uniform(1.0 / range, range);
    }
    if (trace) {
        trace->scale_factors = factors;
    }
    return scale_axes(cloud, factors);
}

LabeledCloud rotate(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace* trace) {
    require_kind(spec, CorruptionKind::Rotate);
    RngStream stream = spec.stream;
    const double theta = SeverityTable::rotate_theta[spec.severity.index()];
    std::array<double, 3> angles{};
    for (double& a : angles) {
        a = stream.uniform(-theta, theta);
    }
    if (trace) {
        trace->euler_angles = angles;
    }
    return rotate_euler(cloud, angles);
}

LabeledCloud drop_global(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace*) {
    require_kind(spec, CorruptionKind::DropGlobal);
    const std::size_t n = cloud.size();
    const std::size_t dropped = drop_global_count(n, spec.severity);
    if (dropped >= n) {
        throw Error(ErrorCode::EmptyResult, "dropping " + std::to_string(dropped) + " of " + std::to_string(n) +
                                                " points leaves nothing");
    }
    RngStream stream = spec.stream;
    return shuffle_and_truncate(cloud, n - dropped, stream);
}

LabeledCloud drop_local(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace* trace) {
    require_kind(spec, CorruptionKind::DropLocal);
    const std::size_t total = SeverityTable::drop_local_count[spec.severity.index()];
    if (cloud.size() <= total + SeverityTable::kMaxClusters) {
        throw Error(ErrorCode::CloudTooSmall, "drop_local needs more than " +
                                                  std::to_string(total + SeverityTable::kMaxClusters) +
                                                  " points, have " + std::to_string(cloud.size()));
    }
    RngStream stream = spec.stream;
    const std::size_t clusters = 1 + stream.index(SeverityTable::kMaxClusters);
    const auto sizes = partition_count(total, clusters, stream);
    if (trace) {
        trace->cluster_sizes = sizes;
    }
    return remove_local_clusters(cloud, sizes, stream, trace);
}

LabeledCloud add_global(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace*) {
    require_kind(spec, CorruptionKind::AddGlobal);
    RngStream stream = spec.stream;
    return append_uniform_ball(cloud, SeverityTable::add_global_count[spec.severity.index()], stream);
}

LabeledCloud add_local(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace* trace) {
    require_kind(spec, CorruptionKind::AddLocal);
    RngStream stream = spec.stream;
    const std::size_t total = SeverityTable::add_local_count[spec.severity.index()];
    const std::size_t clusters = 1 + stream.index(SeverityTable::kMaxClusters);
    const auto sizes = partition_count(total, clusters, stream);
    if (trace) {
        trace->cluster_sizes = sizes;
    }
    return append_local_clusters(cloud, sizes, stream, trace);
}

LabeledCloud apply_corruption(const LabeledCloud& cloud, const CorruptionSpec& spec, CorruptionTrace* trace) {
    switch (spec.kind) {
    case CorruptionKind::Jitter: return jitter(cloud, spec, trace);
    case CorruptionKind::Scale: return scale(cloud, spec, trace);
    case CorruptionKind::Rotate: return rotate(cloud, spec, trace);
    case CorruptionKind::DropGlobal: return drop_global(cloud, spec, trace);
    case CorruptionKind::DropLocal: return drop_local(cloud, spec, trace);
    case CorruptionKind::AddGlobal: return add_global(cloud, spec, trace);
    case CorruptionKind::AddLocal: return add_local(cloud, spec, trace);
    }
    throw Error(ErrorCode::InvalidConfig, "unknown corruption kind");
}

std::size_t expected_point_count(CorruptionKind kind, SeverityLevel severity, std::size_t n) noexcept {
    const std::size_t s = severity.index();
    switch (kind) {
    case CorruptionKind::Jitter:
    case CorruptionKind::Scale:
    case CorruptionKind::Rotate: return n;
    case CorruptionKind::DropGlobal: return n - drop_global_count(n, severity);
    case CorruptionKind::DropLocal: return n - SeverityTable::drop_local_count[s];
    case CorruptionKind::AddGlobal: return n + SeverityTable::add_global_count[s];
    case CorruptionKind::AddLocal: return n + SeverityTable::add_local_count[s];
    }
    return n;
}

} // namespace splatbench
