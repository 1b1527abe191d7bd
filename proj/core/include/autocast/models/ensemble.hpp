#pragma once

#include "autocast/core/series.hpp"

#include <span>

namespace autocast::models {

enum class EnsembleAggregate { Median, Mean };

/// Elementwise median (mean of the two central values for an even count) or
/// mean of at least two member forecasts sharing product, start and horizon.
/// The result carries ModelId::EnsembleMedian.
ForecastResult ensemble_forecast(std::span<const ForecastResult> members,
                                 EnsembleAggregate aggregate = EnsembleAggregate::Median);

} // namespace autocast::models
