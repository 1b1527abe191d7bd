#include "autocast/models/window_features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace autocast::models {

std::vector<double> WindowFeatures::flatten() const {
    std::vector<double> out;
    out.reserve(lags.size() + season.size());
    out.insert(out.end(), lags.begin(), lags.end());
    out.insert(out.end(), season.begin(), season.end());
    return out;
}

WindowFeatures window_for(std::span<const double> history, Period target) {
    const auto m = static_cast<std::size_t>(season_length(target.frequency()));
    if (history.size() < m) throw std::invalid_argument("window needs at least one season of history");
    WindowFeatures f;
    f.lags.assign(history.end() - static_cast<std::ptrdiff_t>(m), history.end());
    f.season.assign(m, 0.0);
    f.season[static_cast<std::size_t>(target.season_slot())] = 1.0;
    return f;
}

std::vector<WindowRow> make_window_features(std::span<const double> values, Period start, const WindowOptions& options) {
    const auto m = static_cast<std::size_t>(season_length(start.frequency()));
    std::vector<WindowRow> rows;
    if (values.size() <= m) return rows;
    rows.reserve(values.size() - m);
    for (std::size_t t = m; t < values.size(); ++t) {
        const Period target = start + static_cast<std::int64_t>(t);
        const double y = options.log_target ? std::log1p(values[t]) : values[t];
        rows.push_back(WindowRow{window_for(values.first(t), target), y, target});
    }
    return rows;
}

std::vector<WindowRow> make_window_features(const SalesSeries& series, const WindowOptions& options) {
    return make_window_features(series.values(), series.start(), options);
}

double product_scale(std::span<const double> values) {
    if (values.empty()) return 1.0;
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    return std::max(1.0, mean);
}

} // namespace autocast::models
