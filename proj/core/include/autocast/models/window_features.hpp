#pragma once

#include "autocast/core/series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace autocast::models {

/// Inputs for predicting one period: the previous m values (oldest first)
/// and a one-hot indicator of the target's seasonal slot.
struct WindowFeatures {
    std::vector<double> lags;
    std::vector<double> season;

    /// lags followed by season, length 2m.
    std::vector<double> flatten() const;
};

struct WindowRow {
    WindowFeatures features;
    double target = 0.0;
    Period target_period;
};

struct WindowOptions {
    /// Train on log1p(target); predictions are mapped back with expm1.
    bool log_target = false;
};

/// One row per period t >= m. Too-short series give an empty list.
std::vector<WindowRow> make_window_features(const SalesSeries& series, const WindowOptions& options = {});
std::vector<WindowRow> make_window_features(std::span<const double> values, Period start,
                                            const WindowOptions& options = {});

/// Features for predicting `target` from the trailing values of `history`
/// (at least m of them).
WindowFeatures window_for(std::span<const double> history, Period target);

/// Per-product normalisation scale: mean of the values, at least 1.
double product_scale(std::span<const double> values);

} // namespace autocast::models
