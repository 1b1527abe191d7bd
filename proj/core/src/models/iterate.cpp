#include "autocast/models/iterate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace autocast::models {

ForecastResult iterate_one_step(const OneStepPredictor& predictor, const SalesSeries& train, std::size_t horizon,
                                ModelId model_id) {
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    std::vector<double> history(train.values().begin(), train.values().end());
    history.reserve(history.size() + horizon);
    ForecastResult out{train.product_id(), model_id, train.last() + 1, {}};
    out.values.reserve(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
        const double raw = predictor(history, out.start + static_cast<std::int64_t>(h));
        if (!std::isfinite(raw)) throw std::runtime_error("one-step predictor returned a non-finite value");
        const double v = std::max(0.0, raw);
        out.values.push_back(v);
        history.push_back(v);
    }
    return out;
}

} // namespace autocast::models
