// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace branchpde {

/// SplitMix64 finalizer: a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Key of the substream for child `index` of the stream keyed `parent`.
constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t index) noexcept
{
    return mix64(mix64(parent ^ 0x6a09e667f3bcc909ULL) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

/// Counter-based stream: draw n is a pure function of (key, n).
///
/// Trees derive one stream per branch (root key from (seed, sample index), child
/// keys from (parent key, child index)), so the values a branch sees never depend
/// on traversal order or thread assignment.
class Stream
{
  public:
    explicit constexpr Stream(std::uint64_t key) noexcept : key_(key) {}

    static constexpr Stream for_sample(std::uint64_t seed, std::uint64_t sample) noexcept
    {
        return Stream(derive_key(seed, sample));
    }

    constexpr std::uint64_t key() const noexcept { return key_; }
    constexpr Stream child(std::uint64_t index) const noexcept { return Stream(derive_key(key_, index)); }

    constexpr std::uint64_t next_u64() noexcept
    {
        return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal by Box–Muller; the second variate of each pair is cached.
    double normal() noexcept
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace branchpde
