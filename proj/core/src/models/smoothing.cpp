#include "autocast/models/smoothing.hpp"

#include "autocast/models/nelder_mead.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace autocast::models {
namespace {

constexpr double kMinParam = 0.001;
constexpr double kMaxParam = 0.999;

double clamp_param(double v) { return std::clamp(v, kMinParam, kMaxParam); }

struct Initial {
    double level = 0.0; // level before the first observation
    double trend = 0.0;
    std::vector<double> seasonal; // indexed by t mod m
};

// Least-squares line through (x_i, y_i); returns {intercept, slope}.
std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    return {my - slope * mx, slope};
}

// Classical decomposition of the first two seasons: centred moving average
// for the trend, detrended values for the seasonal indices.
Initial decompose_two_seasons(std::span<const double> y, std::size_t m) {
    const std::size_t half = m / 2;
    std::vector<double> ts, cma;
    for (std::size_t t = half; t + half < 2 * m; ++t) {
        double acc = 0.0;
        if (m % 2 == 0) {
            acc = 0.5 * y[t - half] + 0.5 * y[t + half];
            for (std::size_t k = t - half + 1; k < t + half; ++k) acc += y[k];
        } else {
            for (std::size_t k = t - half; k <= t + half; ++k) acc += y[k];
        }
        ts.push_back(static_cast<double>(t));
        cma.push_back(acc / static_cast<double>(m));
    }
    Initial init;
    init.seasonal.assign(m, 0.0);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const auto t = static_cast<std::size_t>(ts[i]);
        init.seasonal[t % m] = y[t] - cma[i];
    }
    const double mean_s = std::accumulate(init.seasonal.begin(), init.seasonal.end(), 0.0) / static_cast<double>(m);
    for (double& s : init.seasonal) s -= mean_s;
    const auto [a, b] = fit_line(ts, cma);
    init.level = a - b;
    init.trend = b;
    return init;
}

struct RunResult {
    double sse = 0.0;
    double level = 0.0;
    double trend = 0.0;
    std::vector<double> seasonal;
};

RunResult run_recursion(std::span<const double> y, SmoothingKind kind, double alpha, double beta, double gamma,
                        const Initial& init) {
    RunResult r{0.0, init.level, init.trend, init.seasonal};
    const std::size_t m = r.seasonal.size();
    const bool has_trend = kind != SmoothingKind::Simple;
    const bool has_season = kind == SmoothingKind::HoltWinters;
    for (std::size_t t = 0; t < y.size(); ++t) {
        const double s = has_season ? r.seasonal[t % m] : 0.0;
        const double forecast = r.level + r.trend + s;
        const double err = y[t] - forecast;
        r.sse += err * err;
        const double prev_level = r.level;
        r.level = alpha * (y[t] - s) + (1.0 - alpha) * (r.level + r.trend);
        if (has_trend) r.trend = beta * (r.level - prev_level) + (1.0 - beta) * r.trend;
        if (has_season) r.seasonal[t % m] = gamma * (y[t] - r.level) + (1.0 - gamma) * s;
    }
    return r;
}

HwesState finish(std::span<const double> y, SmoothingKind kind, double alpha, double beta, double gamma,
                 const Initial& init) {
    const auto run = run_recursion(y, kind, alpha, beta, gamma, init);
    HwesState st;
    st.kind = kind;
    st.alpha = alpha;
    st.beta = kind == SmoothingKind::Simple ? 0.0 : beta;
    st.gamma = kind == SmoothingKind::HoltWinters ? gamma : 0.0;
    st.level = run.level;
    st.trend = run.trend;
    st.sse = run.sse;
    const std::size_t m = run.seasonal.size();
    st.seasonal.assign(m, 0.0);
    if (kind == SmoothingKind::HoltWinters) {
        const double mean_s = std::accumulate(run.seasonal.begin(), run.seasonal.end(), 0.0) / static_cast<double>(m);
        st.level += mean_s;
        for (std::size_t i = 0; i < m; ++i) st.seasonal[i] = run.seasonal[(y.size() + i) % m] - mean_s;
    }
    return st;
}

HwesState ses_fallback(std::span<const double> y, std::size_t m) {
    Initial init{y[0], 0.0, std::vector<double>(m, 0.0)};
    auto st = finish(y, SmoothingKind::Simple, 0.3, 0.0, 0.0, init);
    st.fallback = true;
    return st;
}

HwesState fit_kind(std::span<const double> y, std::size_t m, SmoothingKind kind) {
    Initial init;
    std::vector<double> x0;
    switch (kind) {
    case SmoothingKind::HoltWinters:
        init = decompose_two_seasons(y, m);
        x0 = {0.3, 0.1, 0.1};
        break;
    case SmoothingKind::Holt: {
        const std::size_t k = std::min(y.size(), m);
        std::vector<double> ts(k);
        std::iota(ts.begin(), ts.end(), 0.0);
        const auto [a, b] = fit_line(ts, y.first(k));
        init = Initial{a - b, b, std::vector<double>(m, 0.0)};
        x0 = {0.3, 0.1};
        break;
    }
    case SmoothingKind::Simple:
        init = Initial{y[0], 0.0, std::vector<double>(m, 0.0)};
        x0 = {0.3};
        break;
    }

    auto params = [&](std::span<const double> x) {
        return std::array<double, 3>{clamp_param(x[0]), x.size() > 1 ? clamp_param(x[1]) : 0.0,
                                     x.size() > 2 ? clamp_param(x[2]) : 0.0};
    };
    const auto objective = [&](std::span<const double> x) {
        const auto p = params(x);
        return run_recursion(y, kind, p[0], p[1], p[2], init).sse;
    };
    NelderMeadOptions opts;
    opts.max_evaluations = 600;
    opts.initial_step = 0.1;
    const auto res = nelder_mead(objective, x0, opts);
    if (!std::isfinite(res.value)) return ses_fallback(y, m);
    const auto p = params(res.x);
    auto st = finish(y, kind, p[0], p[1], p[2], init);
    if (!std::isfinite(st.sse) || !std::isfinite(st.level) || !std::isfinite(st.trend)) return ses_fallback(y, m);
    return st;
}

} // namespace

HwesState fit_hwes(const SalesSeries& train) {
    const auto m = static_cast<std::size_t>(season_length(train.frequency()));
    const auto y = train.values();
    if (y.size() >= 2 * m) return fit_kind(y, m, SmoothingKind::HoltWinters);
    if (y.size() >= 4) return fit_kind(y, m, SmoothingKind::Holt);
    return fit_kind(y, m, SmoothingKind::Simple);
}

HwesState fit_ses(const SalesSeries& train) {
    const auto m = static_cast<std::size_t>(season_length(train.frequency()));
    return fit_kind(train.values(), m, SmoothingKind::Simple);
}

std::vector<double> hwes_forecast(const HwesState& state, std::size_t horizon) {
    std::vector<double> out(horizon);
    const std::size_t m = state.seasonal.size();
    for (std::size_t h = 1; h <= horizon; ++h) {
        const double s = m > 0 ? state.seasonal[(h - 1) % m] : 0.0;
        out[h - 1] = std::max(0.0, state.level + static_cast<double>(h) * state.trend + s);
    }
    return out;
}

} // namespace autocast::models
