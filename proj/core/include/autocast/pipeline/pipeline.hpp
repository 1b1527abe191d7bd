#pragma once

#include "autocast/core/metrics.hpp"
#include "autocast/core/series.hpp"
#include "autocast/models/gam.hpp"
#include "autocast/models/model_id.hpp"
#include "autocast/pipeline/config.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace autocast::pipeline {

struct ModelScore {
    ModelId model;
    MetricSet metrics;
    std::vector<std::string> flags;
};

struct SkippedModel {
    ModelId model;
    std::string reason;
};

struct ProductValidation {
    std::string product_id;
    Validity validity = Validity::Excluded;
    std::size_t length = 0;
    std::size_t holdout = 0;
    /// Successfully fitted models, in ModelId order.
    std::vector<ModelScore> scores;
    std::vector<SkippedModel> skipped;
    /// Empty for excluded products.
    std::optional<ModelId> recommended;
    std::vector<std::string> flags;
    std::string exclusion_reason;

    const ModelScore* score(ModelId id) const;
};

struct ValidationReport {
    /// Sorted by product id; excluded products included.
    std::vector<ProductValidation> products;
    std::vector<std::string> flags;

    const ProductValidation* find(std::string_view product_id) const;
};

struct ProductForecasts {
    std::string product_id;
    std::optional<ModelId> recommended;
    /// One per model fitted during validation, in ModelId order.
    std::vector<ForecastResult> forecasts;
    std::vector<std::string> flags;
    /// GAM trend/seasonal/residual paths over the full history.
    std::optional<models::GamDecomposition> decomposition;
    std::vector<double> observed;

    const ForecastResult* forecast(ModelId id) const;
};

struct ForecastBundle {
    std::vector<ProductForecasts> products;
    std::size_t horizon = 0;
    std::vector<std::string> flags;

    const ProductForecasts* find(std::string_view product_id) const;
};

/// Holdout length used for a series: the configured holdout for full
/// histories, max(3, n - m) for short ones, 0 when excluded.
std::size_t holdout_for(const SalesSeries& series, const PipelineConfig& config);

/**
 * Validation step: every eligible product is split into a train prefix and
 * the holdout, every enabled model is fitted on the prefix (shared-weight
 * models once on all prefixes), scored on the holdout and the lowest-RMSE
 * model is recommended (ties by priority_rank). Model failures are recorded
 * per product and never abort the run.
 */
ValidationReport run_validation(std::span<const SalesSeries> corpus, const PipelineConfig& config);

/// Refits every model that validated successfully on the full history and
/// forecasts config.horizon periods.
ForecastBundle finalize_and_forecast(std::span<const SalesSeries> corpus, const ValidationReport& report,
                                     const PipelineConfig& config);

} // namespace autocast::pipeline
