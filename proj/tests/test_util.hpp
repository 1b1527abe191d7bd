#pragma once

#include "autocast/core/random.hpp"
#include "autocast/core/series.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace autocast::testing {

inline SalesSeries monthly(std::string id, std::vector<double> values, std::int64_t start_index = 192) {
    return SalesSeries(std::move(id), Period(Frequency::Monthly, start_index), std::move(values));
}

/// level + amplitude * cos(2 pi t / m) + slope * t, plus optional Gaussian noise.
inline std::vector<double> seasonal_values(std::size_t n, double level = 1000.0, double amplitude = 200.0,
                                           double slope = 0.0, double noise = 0.0, std::uint64_t seed = 1,
                                           int m = 12) {
    SplitMix64 rng(seed);
    std::vector<double> v(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double x = level + amplitude * std::cos(2.0 * std::numbers::pi * static_cast<double>(t % m) / m) +
                         slope * static_cast<double>(t) + noise * rng.normal();
        v[t] = std::max(0.0, x);
    }
    return v;
}

} // namespace autocast::testing
