#include "autocast/core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace autocast {
namespace {

void check_inputs(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.empty()) throw std::invalid_argument("metrics need at least one point");
    if (actual.size() != predicted.size())
        throw std::invalid_argument("actual and predicted lengths differ (" + std::to_string(actual.size()) +
                                    " vs " + std::to_string(predicted.size()) + ")");
}

} // namespace

double compute_rmse(std::span<const double> actual, std::span<const double> predicted) {
    check_inputs(actual, predicted);
    double sse = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = actual[i] - predicted[i];
        sse += e * e;
    }
    return std::sqrt(sse / static_cast<double>(actual.size()));
}

std::optional<double> compute_nrmse(std::span<const double> actual, std::span<const double> predicted) {
    const double rmse = compute_rmse(actual, predicted);
    const auto [lo, hi] = std::minmax_element(actual.begin(), actual.end());
    const double range = *hi - *lo;
    if (!(range > 0.0)) return std::nullopt;
    return rmse / range;
}

MapeResult compute_mape(std::span<const double> actual, std::span<const double> predicted) {
    check_inputs(actual, predicted);
    MapeResult out;
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0) {
            ++out.skipped;
            continue;
        }
        sum += std::abs((actual[i] - predicted[i]) / actual[i]);
        ++used;
    }
    if (used > 0) out.value = sum / static_cast<double>(used);
    return out;
}

MetricSet compute_metrics(std::span<const double> actual, std::span<const double> predicted) {
    MetricSet m;
    m.rmse = compute_rmse(actual, predicted);
    m.nrmse = compute_nrmse(actual, predicted);
    const auto mape = compute_mape(actual, predicted);
    m.mape = mape.value;
    m.mape_skipped = mape.skipped;
    return m;
}

} // namespace autocast
