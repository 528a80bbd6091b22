// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/rng.hpp"

#include <cmath>
#include <numbers>

namespace splatbench {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

} // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    std::uint64_t z = x + kGoldenGamma;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fold_lineage(const Lineage& lineage) noexcept {
    std::uint64_t h = splitmix64(lineage.master_seed);
    h = splitmix64(h ^ lineage.sample_id);
    return splitmix64(h ^ lineage.corruption_tag);
}

RngStream::RngStream(const Lineage& lineage) noexcept : lineage_(lineage) {
    std::uint64_t seq = fold_lineage(lineage);
    for (auto& word : state_) {
        word = splitmix64(seq);
        seq += kGoldenGamma;
    }
}

std::uint64_t RngStream::next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

double RngStream::normal() noexcept {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t RngStream::index(std::size_t n) noexcept {
    if (n == 0) {
        return 0;
    }
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t sample_id, std::uint64_t corruption_tag) noexcept {
    return RngStream(Lineage{master_seed, sample_id, corruption_tag});
}

} // namespace splatbench
