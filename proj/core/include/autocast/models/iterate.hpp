#pragma once

#include "autocast/core/series.hpp"

#include <cstddef>
#include <functional>
#include <span>

namespace autocast::models {

/// Predicts the value of `target` given every value observed (or predicted) before it.
using OneStepPredictor = std::function<double(std::span<const double> history, const Period& target)>;

/// Predicts one period, appends the prediction (floored at zero) to the
/// working history and repeats until `horizon` values exist.
ForecastResult iterate_one_step(const OneStepPredictor& predictor, const SalesSeries& train, std::size_t horizon,
                                ModelId model_id);

} // namespace autocast::models
