#pragma once

#include "autocast/core/series.hpp"

#include <array>
#include <string_view>

namespace autocast {

/// The closed set of forecasting models.
enum class ModelId : int {
    Naive,
    SES,
    HWES,
    ARIMA,
    SARIMA,
    GAM,
    BoostedTree,
    CNN,
    EnsembleMedian,
};

inline constexpr std::array<ModelId, 9> kAllModels{
    ModelId::Naive, ModelId::SES,         ModelId::HWES, ModelId::ARIMA,          ModelId::SARIMA,
    ModelId::GAM,   ModelId::BoostedTree, ModelId::CNN,  ModelId::EnsembleMedian,
};

std::string_view to_string(ModelId id) noexcept;
/// Throws std::invalid_argument for unknown names.
ModelId parse_model_id(std::string_view name);

/// Tie-break rank among equally accurate models; 0 is most preferred.
/// HWES, SES, GAM, SARIMA, ARIMA, BoostedTree, CNN, EnsembleMedian, Naive.
int priority_rank(ModelId id) noexcept;

} // namespace autocast
