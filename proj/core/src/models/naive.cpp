#include "autocast/models/naive.hpp"

#include "autocast/models/model_id.hpp"

#include <stdexcept>

namespace autocast::models {

ForecastResult naive_forecast(const SalesSeries& train, std::size_t horizon) {
    const int m = season_length(train.frequency());
    std::vector<double> sum(static_cast<std::size_t>(m), 0.0);
    std::vector<std::size_t> count(static_cast<std::size_t>(m), 0);
    double total = 0.0;
    for (std::size_t i = 0; i < train.size(); ++i) {
        const auto slot = static_cast<std::size_t>((train.start() + static_cast<std::int64_t>(i)).season_slot());
        sum[slot] += train[i];
        ++count[slot];
        total += train[i];
    }
    const double overall = total / static_cast<double>(train.size());

    ForecastResult out{train.product_id(), ModelId::Naive, train.last() + 1, {}};
    out.values.reserve(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
        const auto slot = static_cast<std::size_t>((out.start + static_cast<std::int64_t>(h)).season_slot());
        out.values.push_back(count[slot] > 0 ? sum[slot] / static_cast<double>(count[slot]) : overall);
    }
    return out;
}

} // namespace autocast::models
