#pragma once

#include "autocast/core/metrics.hpp"
#include "autocast/core/series.hpp"
#include "autocast/eval/wilcoxon.hpp"
#include "autocast/models/model_id.hpp"
#include "autocast/pipeline/pipeline.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace autocast::eval {

/// model / naive; empty when either is undefined or the naive error is zero.
std::optional<double> error_ratio(std::optional<double> model_nrmse, std::optional<double> naive_nrmse);

struct ProductScore {
    std::string product_id;
    ModelId recommended = ModelId::Naive;
    /// Ex-post lowest realised RMSE (ties by priority_rank).
    ModelId best = ModelId::Naive;
    std::size_t scored_periods = 0;
    std::map<ModelId, MetricSet> realized;
    std::optional<double> recommended_nrmse;
    std::optional<double> best_nrmse;
    std::optional<double> naive_nrmse;
    std::optional<double> recommended_ratio;
    std::optional<double> best_ratio;
};

struct Quartiles {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

struct EvaluationSummary {
    std::vector<ProductScore> products;
    /// Mean realised nRMSE per model over products where it is defined.
    std::map<ModelId, double> mean_nrmse;
    std::map<ModelId, std::size_t> recommended_histogram;
    std::map<ModelId, std::size_t> best_histogram;
    std::optional<Quartiles> recommended_ratio;
    std::optional<Quartiles> best_ratio;
    std::optional<WilcoxonResult> recommended_vs_naive;
    std::optional<WilcoxonResult> best_vs_naive;
    Alternative alternative = Alternative::TwoSided;
    /// Products left out, with the reason.
    std::vector<std::pair<std::string, std::string>> excluded;
    /// Scored products whose actuals are constant (nRMSE undefined).
    std::size_t undefined_nrmse = 0;
};

Quartiles quartiles(std::vector<double> values);

/**
 * Scores every model's forecast against realised actuals over the periods
 * both cover, compares the recommended and ex-post best models with the naive
 * baseline and runs the paired Wilcoxon tests on (model nRMSE - naive nRMSE).
 * Products without a recommendation, without overlapping actuals or without a
 * naive forecast are excluded with a reason.
 */
EvaluationSummary summarize(const pipeline::ValidationReport& validation, const pipeline::ForecastBundle& forecasts,
                            std::span<const SalesSeries> actuals, Alternative alternative = Alternative::TwoSided);

/// evaluation.json, ratios.csv and boxplot.svg (ratios above 3.5 clipped in the drawing only).
void export_evaluation(const EvaluationSummary& summary, const std::filesystem::path& dir);

std::string evaluation_to_json(const EvaluationSummary& summary);

} // namespace autocast::eval
