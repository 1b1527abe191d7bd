#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace autocast::testing {

/// Two-sided exact signed-rank p by walking all 2^n sign assignments.
/// Ranks are recomputed here from scratch (mid-ranks on |d|, zeros dropped).
inline double enumerate_signed_rank_p(const std::vector<double>& input) {
    std::vector<double> d;
    for (double v : input)
        if (v != 0.0) d.push_back(v);
    const std::size_t n = d.size();
    std::vector<double> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
        double less = 0, equal = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(d[j]) < std::abs(d[i])) ++less;
            if (std::abs(d[j]) == std::abs(d[i])) ++equal;
        }
        rank[i] = less + (equal + 1.0) / 2.0;
    }
    double total = 0, observed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        total += rank[i];
        if (d[i] > 0) observed += rank[i];
    }
    const double centre = total / 2.0;
    const double obs_dev = std::abs(observed - centre);
    std::uint64_t hits = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        double w = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1U) w += rank[i];
        if (std::abs(w - centre) >= obs_dev) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(std::uint64_t{1} << n);
}

} // namespace autocast::testing
