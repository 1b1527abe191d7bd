#pragma once

#include <cstdint>
#include <string_view>

namespace autocast {

/**
 * SplitMix64 generator.
 *
 *   state += 0x9E3779B97F4A7C15
 *   z = state
 *   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
 *   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
 *   return z ^ (z >> 31)
 *
 * Uniform doubles take the top 53 bits: (next() >> 11) * 2^-53.
 * Gaussians use Box-Muller on two uniforms (u1 mapped into (0, 1]),
 * returning the cosine branch only, so every normal() consumes exactly two draws.
 * The recurrence is spelled out so corpora can be reproduced in any language.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;
    /// Uniform in [0, 1).
    double uniform() noexcept;
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Standard normal.
    double normal() noexcept;
    /// Uniform integer in [0, bound) by rejection, bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

/// One SplitMix64 output step applied to `x` (a stateless 64-bit mixer).
std::uint64_t mix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a hash of a string.
std::uint64_t fnv1a(std::string_view text) noexcept;

} // namespace autocast
