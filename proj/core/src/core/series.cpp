#include "autocast/core/series.hpp"

#include <cmath>
#include <stdexcept>

namespace autocast {

SalesSeries::SalesSeries(std::string product_id, Period start, std::vector<double> values)
    : product_id_(std::move(product_id)), start_(start), values_(std::move(values)) {
    if (values_.empty())
        throw std::invalid_argument("series '" + product_id_ + "' has no values");
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("series '" + product_id_ + "' holds a negative or non-finite value");
    }
}

SalesSeries SalesSeries::prefix(std::size_t n) const {
    if (n == 0 || n > values_.size()) throw std::out_of_range("prefix length out of range");
    return SalesSeries(product_id_, start_, {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)});
}

SalesSeries SalesSeries::suffix(std::size_t n) const {
    if (n == 0 || n > values_.size()) throw std::out_of_range("suffix length out of range");
    const auto offset = values_.size() - n;
    return SalesSeries(product_id_, start_ + static_cast<std::int64_t>(offset),
                       {values_.begin() + static_cast<std::ptrdiff_t>(offset), values_.end()});
}

std::pair<SalesSeries, SalesSeries> split_holdout(const SalesSeries& series, std::size_t holdout) {
    if (holdout < 1) throw std::invalid_argument("holdout must be at least 1");
    if (holdout >= series.size())
        throw std::invalid_argument("holdout of " + std::to_string(holdout) + " leaves no training data for '" +
                                    series.product_id() + "' (length " + std::to_string(series.size()) + ")");
    return {series.prefix(series.size() - holdout), series.suffix(holdout)};
}

SalesSeries concatenate(const SalesSeries& head, const SalesSeries& tail) {
    if (head.product_id() != tail.product_id()) throw std::invalid_argument("product ids differ");
    if (tail.start() != head.last() + 1) throw std::invalid_argument("series are not contiguous");
    std::vector<double> values(head.values().begin(), head.values().end());
    values.insert(values.end(), tail.values().begin(), tail.values().end());
    return SalesSeries(head.product_id(), head.start(), std::move(values));
}

std::string_view to_string(Validity v) noexcept {
    switch (v) {
    case Validity::FullPipeline: return "full";
    case Validity::ShortHistory: return "short_history";
    case Validity::Excluded: return "excluded";
    }
    return "unknown";
}

Validity check_validity(const SalesSeries& series) noexcept {
    const auto m = static_cast<std::size_t>(season_length(series.frequency()));
    if (series.size() < m) return Validity::Excluded;
    if (series.size() < 2 * m) return Validity::ShortHistory;
    return Validity::FullPipeline;
}

void ForecastResult::validate() const {
    if (values.empty()) throw std::invalid_argument("forecast for '" + product_id + "' is empty");
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("forecast for '" + product_id + "' holds a negative or non-finite value");
    }
}

} // namespace autocast
