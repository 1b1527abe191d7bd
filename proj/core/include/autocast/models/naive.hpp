#pragma once

#include "autocast/core/series.hpp"

#include <cstddef>

namespace autocast::models {

/// Mean of the training values in the same seasonal slot (month or week of
/// year); slots never seen in training fall back to the overall mean.
ForecastResult naive_forecast(const SalesSeries& train, std::size_t horizon);

} // namespace autocast::models
