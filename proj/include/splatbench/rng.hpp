// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace splatbench {

/// Identity of one random stream. Every stochastic procedure is keyed by
/// its lineage, never by call order or worker assignment.
struct Lineage {
    std::uint64_t master_seed = 0;
    std::uint64_t sample_id = 0;
    std::uint64_t corruption_tag = 0;

    friend bool operator==(const Lineage&, const Lineage&) = default;
};

/// SplitMix64 output function: advance by the golden gamma, then finalize.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed derivation: splitmix64(splitmix64(splitmix64(master) ^ sample) ^ tag).
std::uint64_t fold_lineage(const Lineage& lineage) noexcept;

/*
 * Deterministic random stream.
 *
 * Engine: xoshiro256** whose four state words are the first four outputs of
 * a SplitMix64 sequence started at fold_lineage(lineage).
 *
 *   uniform()  = (next_u64() >> 11) * 2^-53, in [0, 1)
 *   normal()   = sqrt(-2 ln(1 - u1)) * cos(2 pi u2), two uniforms per call
 *   index(n)   = min(floor(uniform() * n), n - 1)
 *
 * The uniform sequence is bit-exact across platforms; normals depend on the
 * host libm for log/cos.
 */
class RngStream {
public:
    explicit RngStream(const Lineage& lineage) noexcept;

    std::uint64_t next_u64() noexcept;
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept;
    double normal() noexcept;
    std::size_t index(std::size_t n) noexcept;

    const Lineage& lineage() const noexcept { return lineage_; }

private:
    std::array<std::uint64_t, 4> state_{};
    Lineage lineage_;
};

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t sample_id, std::uint64_t corruption_tag) noexcept;

} // namespace splatbench
