#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace autocast {

/// Error metrics of a forecast against actuals over the same periods.
struct MetricSet {
    double rmse = 0.0;
    /// Empty when the actuals are constant (zero range).
    std::optional<double> nrmse;
    /// Fraction, not percent. Empty when every actual is zero.
    std::optional<double> mape;
    /// Zero-actual periods left out of the MAPE mean.
    std::size_t mape_skipped = 0;
};

struct MapeResult {
    std::optional<double> value;
    std::size_t skipped = 0;
};

// All metrics require equal, non-zero lengths and throw std::invalid_argument otherwise.

/// sqrt(mean((actual - predicted)^2)).
double compute_rmse(std::span<const double> actual, std::span<const double> predicted);

/// RMSE divided by the range of the actuals.
std::optional<double> compute_nrmse(std::span<const double> actual, std::span<const double> predicted);

/// Mean of |a - p| / a over the periods with a != 0.
MapeResult compute_mape(std::span<const double> actual, std::span<const double> predicted);

MetricSet compute_metrics(std::span<const double> actual, std::span<const double> predicted);

} // namespace autocast
