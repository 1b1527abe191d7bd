#pragma once

#include "autocast/core/period.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace autocast {

/**
 * One product's contiguous, period-aggregated sales history.
 *
 * Values are non-negative and finite; a period without sales is an explicit
 * zero. Instances are immutable once constructed.
 */
class SalesSeries {
public:
    SalesSeries(std::string product_id, Period start, std::vector<double> values);

    const std::string& product_id() const noexcept { return product_id_; }
    Frequency frequency() const noexcept { return start_.frequency(); }
    const Period& start() const noexcept { return start_; }
    /// Last observed period.
    Period last() const { return start_ + static_cast<std::int64_t>(values_.size()) - 1; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    /// First `n` periods as a new series (1 <= n <= size()).
    SalesSeries prefix(std::size_t n) const;
    /// Last `n` periods as a new series (1 <= n <= size()).
    SalesSeries suffix(std::size_t n) const;

    bool operator==(const SalesSeries&) const = default;

private:
    std::string product_id_;
    Period start_;
    std::vector<double> values_;
};

/// Splits off the final `holdout` periods. Both halves are non-empty.
std::pair<SalesSeries, SalesSeries> split_holdout(const SalesSeries& series, std::size_t holdout);

/// Joins two series when `tail` starts right after `head` ends.
SalesSeries concatenate(const SalesSeries& head, const SalesSeries& tail);

enum class Validity { FullPipeline, ShortHistory, Excluded };

std::string_view to_string(Validity v) noexcept;

/// Fewer than one seasonal cycle is excluded; one to two cycles is a short history.
Validity check_validity(const SalesSeries& series) noexcept;

/// Identifier of a forecasting model; defined by the models module.
enum class ModelId : int;

/// A model's predicted values for the periods following a history.
struct ForecastResult {
    std::string product_id;
    ModelId model_id;
    Period start;
    std::vector<double> values;

    /// Checks the non-negative, finite, non-empty invariants.
    void validate() const;
};

} // namespace autocast
