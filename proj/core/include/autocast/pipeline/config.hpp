#pragma once

#include "autocast/core/period.hpp"
#include "autocast/models/ensemble.hpp"
#include "autocast/models/model_id.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace autocast::pipeline {

struct PipelineConfig {
    Frequency frequency = Frequency::Monthly;
    std::size_t horizon = 18;
    std::size_t holdout = 12;
    std::vector<ModelId> models{kAllModels.begin(), kAllModels.end()};
    std::vector<ModelId> ensemble_members{ModelId::HWES, ModelId::GAM, ModelId::ARIMA, ModelId::BoostedTree};
    models::EnsembleAggregate ensemble_aggregate = models::EnsembleAggregate::Median;
    std::uint64_t seed = 42;
    /// Absolute GAM penalties; empty selects a relative log grid per product.
    std::vector<double> gam_lambda_grid;
    bool boosted_log_target = false;
    /// 0 uses the hardware concurrency.
    std::size_t workers = 0;
    std::string input;
    std::string output;

    /// Horizon 18 / holdout 12 for monthly data, 78 / 52 for weekly data.
    static PipelineConfig defaults(Frequency frequency);

    bool enabled(ModelId id) const;
    /// horizon >= 1, holdout >= 3, ensemble members enabled. Throws InputError naming the key.
    void validate() const;
};

/// JSON object; missing keys take the (frequency-dependent) defaults and
/// unknown keys are rejected. Throws InputError naming the offending key.
PipelineConfig parse_config_json(std::string_view text);
PipelineConfig parse_config(const std::filesystem::path& path);

/// Canonical JSON echo of the configuration.
std::string config_to_json(const PipelineConfig& config);

} // namespace autocast::pipeline
