#pragma once

#include "autocast/pipeline/config.hpp"
#include "autocast/pipeline/pipeline.hpp"

#include <filesystem>

namespace autocast::pipeline {

/**
 * Writes forecasts.csv, validation.csv, summary.json and one
 * decomposition_<product>.svg per forecast product into `dir` (created if
 * needed). An empty bundle still writes every file. Throws
 * std::runtime_error naming the path on I/O failure.
 */
void export_bundle(const ForecastBundle& bundle, const ValidationReport& report, const PipelineConfig& config,
                   const std::filesystem::path& dir);

/// validation.csv and summary.json only (the `validate` command).
void export_validation(const ValidationReport& report, const PipelineConfig& config, const std::filesystem::path& dir);

/// Parses forecasts.csv back into a bundle (no recommendations or decompositions).
ForecastBundle read_forecasts_csv(const std::filesystem::path& path, Frequency frequency);

/// Parses validation.csv back into a report of scores and recommendations.
ValidationReport read_validation_csv(const std::filesystem::path& path);

/// File-name-safe form of a product id.
std::string sanitize_filename(std::string_view product_id);

} // namespace autocast::pipeline
