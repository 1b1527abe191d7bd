#include "autocast/models/ensemble.hpp"

#include "autocast/models/model_id.hpp"

#include <algorithm>
#include <stdexcept>

namespace autocast::models {

ForecastResult ensemble_forecast(std::span<const ForecastResult> members, EnsembleAggregate aggregate) {
    if (members.size() < 2) throw std::invalid_argument("an ensemble needs at least two members");
    const auto& first = members.front();
    for (const auto& f : members) {
        if (f.values.size() != first.values.size()) throw std::invalid_argument("ensemble members have different horizons");
        if (f.product_id != first.product_id || f.start != first.start)
            throw std::invalid_argument("ensemble members describe different products or start periods");
    }
    ForecastResult out{first.product_id, ModelId::EnsembleMedian, first.start, {}};
    out.values.resize(first.values.size());
    std::vector<double> column(members.size());
    for (std::size_t t = 0; t < first.values.size(); ++t) {
        for (std::size_t k = 0; k < members.size(); ++k) column[k] = members[k].values[t];
        if (aggregate == EnsembleAggregate::Mean) {
            double s = 0.0;
            for (double v : column) s += v;
            out.values[t] = s / static_cast<double>(column.size());
            continue;
        }
        std::sort(column.begin(), column.end());
        const std::size_t mid = column.size() / 2;
        out.values[t] = column.size() % 2 == 1 ? column[mid] : 0.5 * (column[mid - 1] + column[mid]);
    }
    return out;
}

} // namespace autocast::models
