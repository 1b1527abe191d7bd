#pragma once

#include "autocast/core/series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace autocast::models {

enum class SmoothingKind { HoltWinters, Holt, Simple };

/**
 * Additive exponential smoothing state after the last training observation.
 *
 * `seasonal` has one entry per seasonal slot (12 or 52) and is rotated so
 * that seasonal[i] applies to the (i+1)-th period after the training data.
 * Its entries sum to zero; non-seasonal kinds hold zeros.
 */
struct HwesState {
    SmoothingKind kind = SmoothingKind::HoltWinters;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double level = 0.0;
    double trend = 0.0;
    std::vector<double> seasonal;
    /// Set when optimisation produced a non-finite loss and SES(alpha=0.3) was used instead.
    bool fallback = false;
    /// In-sample one-step sum of squared errors at the chosen parameters.
    double sse = 0.0;
};

/// Holt-Winters with additive seasonality when at least two seasons are
/// available, Holt's linear method with at least 4 points, SES otherwise.
/// Smoothing parameters minimise the in-sample one-step SSE (Nelder-Mead,
/// clamped to [0.001, 0.999]).
HwesState fit_hwes(const SalesSeries& train);

/// Simple exponential smoothing with an optimised alpha.
HwesState fit_ses(const SalesSeries& train);

/// level + h*trend + seasonal[h-1 mod m], floored at zero.
std::vector<double> hwes_forecast(const HwesState& state, std::size_t horizon);

} // namespace autocast::models
