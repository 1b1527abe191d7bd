#include "autocast/models/arima.hpp"

#include "autocast/models/nelder_mead.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace autocast::models {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRootMargin = 1e-6;

struct Lag {
    int lag;
    double coef;
};

// 1 - sum phi_i B^i is stationary iff every partial autocorrelation obtained
// by the step-down (reverse Levinson) recursion lies strictly inside (-1, 1).
bool is_stationary(std::vector<double> phi) {
    while (!phi.empty() && phi.back() == 0.0) phi.pop_back();
    for (std::size_t k = phi.size(); k > 0; --k) {
        const double r = phi[k - 1];
        if (!(std::abs(r) < 1.0 - kRootMargin)) return false;
        const double denom = 1.0 - r * r;
        std::vector<double> next(k - 1);
        for (std::size_t j = 0; j + 1 < k; ++j) next[j] = (phi[j] + r * phi[k - 2 - j]) / denom;
        phi = std::move(next);
    }
    return true;
}

bool is_invertible(const std::vector<double>& theta) {
    std::vector<double> neg(theta.size());
    std::transform(theta.begin(), theta.end(), neg.begin(), [](double v) { return -v; });
    return is_stationary(std::move(neg));
}

// Smallest |z| over the roots of 1 + sign*sum c_i z^i (companion-matrix eigenvalues).
double min_root_modulus(std::vector<double> c, double sign) {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.empty()) return kInf;
    const auto k = static_cast<Eigen::Index>(c.size());
    // Roots of z^k * poly(1/z) are the reciprocals of the roots of poly.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) companion(0, i) = -sign * c[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
    const double largest = companion.eigenvalues().cwiseAbs().maxCoeff();
    return largest > 0.0 ? 1.0 / largest : kInf;
}

// Rejects fits with an AR or MA root within 1.01 of the unit circle; CSS with
// zero pre-sample residuals rewards near-cancelling root pairs there.
bool roots_clear_of_unit_circle(const ArimaCoefficients& c, int m) {
    constexpr double kMinModulus = 1.01;
    const auto seasonal = [&](const std::vector<double>& v, double sign) {
        const double u = min_root_modulus(v, sign);
        return std::isfinite(u) ? std::pow(u, 1.0 / std::max(m, 1)) : kInf;
    };
    return min_root_modulus(c.ar, -1.0) >= kMinModulus && min_root_modulus(c.ma, 1.0) >= kMinModulus &&
           seasonal(c.seasonal_ar, -1.0) >= kMinModulus && seasonal(c.seasonal_ma, 1.0) >= kMinModulus;
}

// Multiplies (1 + sign*sum a_i B^i)(1 + sign*sum A_j B^{jm}) and returns the
// nonzero lag terms c_k of 1 + sign*sum c_k B^k.
std::vector<Lag> expand(const std::vector<double>& a, const std::vector<double>& seasonal, int m, double sign) {
    const int len = static_cast<int>(a.size()) + static_cast<int>(seasonal.size()) * m + 1;
    std::vector<double> lhs(static_cast<std::size_t>(a.size() + 1), 0.0);
    lhs[0] = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) lhs[i + 1] = sign * a[i];
    std::vector<double> rhs(static_cast<std::size_t>(seasonal.size()) * static_cast<std::size_t>(m) + 1, 0.0);
    rhs[0] = 1.0;
    for (std::size_t j = 0; j < seasonal.size(); ++j) rhs[(j + 1) * static_cast<std::size_t>(m)] = sign * seasonal[j];
    std::vector<double> prod(static_cast<std::size_t>(len), 0.0);
    for (std::size_t i = 0; i < lhs.size(); ++i)
        for (std::size_t j = 0; j < rhs.size(); ++j) prod[i + j] += lhs[i] * rhs[j];
    std::vector<Lag> out;
    for (std::size_t k = 1; k < prod.size(); ++k)
        if (prod[k] != 0.0) out.push_back({static_cast<int>(k), sign * prod[k]});
    return out;
}

struct Differenced {
    std::vector<int> lags;                  // differencing operations in application order
    std::vector<std::vector<double>> levels; // levels[0] = original, levels.back() = fully differenced
};

Differenced difference(std::span<const double> y, const ArimaOrder& o) {
    Differenced out;
    out.levels.emplace_back(y.begin(), y.end());
    for (int i = 0; i < o.d; ++i) out.lags.push_back(1);
    for (int i = 0; i < o.D; ++i) out.lags.push_back(o.m);
    for (int lag : out.lags) {
        const auto& prev = out.levels.back();
        std::vector<double> next;
        for (std::size_t t = static_cast<std::size_t>(lag); t < prev.size(); ++t) next.push_back(prev[t] - prev[t - lag]);
        out.levels.push_back(std::move(next));
    }
    return out;
}

struct Layout {
    bool intercept;
    int p, q, P, Q;
    std::size_t size() const { return (intercept ? 1u : 0u) + static_cast<std::size_t>(p + q + P + Q); }
};

ArimaCoefficients unpack(std::span<const double> x, const Layout& l, double center, double scale) {
    ArimaCoefficients c;
    std::size_t i = 0;
    c.has_intercept = l.intercept;
    if (l.intercept) c.intercept = center + scale * x[i++];
    c.ar.assign(x.begin() + static_cast<std::ptrdiff_t>(i), x.begin() + static_cast<std::ptrdiff_t>(i + l.p));
    i += static_cast<std::size_t>(l.p);
    c.ma.assign(x.begin() + static_cast<std::ptrdiff_t>(i), x.begin() + static_cast<std::ptrdiff_t>(i + l.q));
    i += static_cast<std::size_t>(l.q);
    c.seasonal_ar.assign(x.begin() + static_cast<std::ptrdiff_t>(i), x.begin() + static_cast<std::ptrdiff_t>(i + l.P));
    i += static_cast<std::size_t>(l.P);
    c.seasonal_ma.assign(x.begin() + static_cast<std::ptrdiff_t>(i), x.begin() + static_cast<std::ptrdiff_t>(i + l.Q));
    return c;
}

int max_ar_lag(const ArimaOrder& o) { return o.p + o.P * o.m; }

// Conditional residuals e_t for t >= max AR lag; earlier residuals are zero.
double css_residuals(std::span<const double> w, const ArimaCoefficients& c, const std::vector<Lag>& ar,
                     const std::vector<Lag>& ma, std::size_t start, std::vector<double>& e) {
    e.assign(w.size(), 0.0);
    const double mu = c.has_intercept ? c.intercept : 0.0;
    double sse = 0.0;
    for (std::size_t t = start; t < w.size(); ++t) {
        double pred = mu;
        for (const auto& [lag, coef] : ar) pred += coef * (w[t - static_cast<std::size_t>(lag)] - mu);
        for (const auto& [lag, coef] : ma) {
            if (t >= static_cast<std::size_t>(lag)) pred += coef * e[t - static_cast<std::size_t>(lag)];
        }
        e[t] = w[t] - pred;
        sse += e[t] * e[t];
    }
    return sse;
}

struct Candidate {
    ArimaFit fit;
    bool ok = false;
};

Candidate fit_candidate(std::span<const double> y, const ArimaOrder& order) {
    Candidate out;
    const auto diff = difference(y, order);
    const auto& w = diff.levels.back();
    const auto start = static_cast<std::size_t>(max_ar_lag(order));
    if (w.size() <= start + 1) return out;
    const std::size_t n_eff = w.size() - start;

    Layout layout{order.d + order.D <= 1, order.p, order.q, order.P, order.Q};
    const std::size_t k = layout.size() + 1; // + innovation variance
    if (static_cast<double>(n_eff) - static_cast<double>(k) - 1.0 <= 0.0) return out;

    const double center = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
    double var = 0.0;
    for (double v : w) var += (v - center) * (v - center);
    var /= static_cast<double>(w.size());
    const double scale = std::sqrt(var) > 0.0 ? std::sqrt(var) : 1.0;

    double level_sq = 0.0;
    for (double v : y) level_sq += v * v;
    const double sigma2_floor = 1e-14 * (level_sq / static_cast<double>(y.size()) + 1.0);

    std::vector<double> e;
    const auto objective = [&](std::span<const double> x) {
        const auto c = unpack(x, layout, center, scale);
        if (!is_stationary(c.ar) || !is_invertible(c.ma) || !is_stationary(c.seasonal_ar) ||
            !is_invertible(c.seasonal_ma))
            return kInf;
        const auto ar = expand(c.ar, c.seasonal_ar, order.m, -1.0);
        const auto ma = expand(c.ma, c.seasonal_ma, order.m, 1.0);
        const double sse = css_residuals(w, c, ar, ma, start, e);
        return std::isfinite(sse) ? sse : kInf;
    };

    NelderMeadOptions opts;
    opts.initial_step = 0.1;
    opts.max_evaluations = 150 * (layout.size() + 1);
    opts.f_tolerance = 1e-9;
    opts.x_tolerance = 1e-5;
    const auto res = nelder_mead(objective, std::vector<double>(layout.size(), 0.0), opts);
    if (!std::isfinite(res.value)) return out;

    auto& fit = out.fit;
    fit.order = order;
    fit.coefficients = unpack(res.x, layout, center, scale);
    fit.n_effective = n_eff;
    fit.sigma2 = res.value / static_cast<double>(n_eff);
    // Scored over the whole differenced length so that candidates conditioning
    // on more leading values are not rewarded for fitting fewer residuals.
    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(w.size());
    fit.aicc = nd * std::log(std::max(fit.sigma2, sigma2_floor)) + 2.0 * kd + 2.0 * kd * (kd + 1.0) / (nd - kd - 1.0);
    fit.history.assign(y.begin(), y.end());
    out.ok = std::isfinite(fit.aicc);
    return out;
}

} // namespace

void ArimaOrder::validate() const {
    if (p < 0 || d < 0 || q < 0 || P < 0 || D < 0 || Q < 0) throw std::invalid_argument("ARIMA orders must be non-negative");
    if (p > 3 || q > 3) throw std::invalid_argument("ARIMA p and q must be at most 3");
    if (d > 2) throw std::invalid_argument("ARIMA d must be at most 2");
    if (P > 1 || D > 1 || Q > 1) throw std::invalid_argument("seasonal ARIMA orders must be at most 1");
    if (is_seasonal() && m < 2) throw std::invalid_argument("seasonal ARIMA needs a period m >= 2");
}

std::string ArimaOrder::to_string() const {
    std::string s = "(" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(q) + ")";
    if (is_seasonal())
        s += "(" + std::to_string(P) + "," + std::to_string(D) + "," + std::to_string(Q) + ")[" + std::to_string(m) + "]";
    return s;
}

ArimaFit fit_arima_order(std::span<const double> values, const ArimaOrder& order) {
    order.validate();
    auto c = fit_candidate(values, order);
    if (!c.ok) throw std::runtime_error("ARIMA" + order.to_string() + " could not be fitted");
    return std::move(c.fit);
}

ArimaFit fit_arima(const SalesSeries& train, bool seasonal, const ArimaGrid& grid) {
    const int m = season_length(train.frequency());
    const auto y = train.values();
    if (seasonal && y.size() < static_cast<std::size_t>(3 * m))
        throw std::invalid_argument("seasonal ARIMA needs at least three seasons of history");
    if (!seasonal && y.size() < 10) throw std::invalid_argument("ARIMA needs at least 10 observations");

    Candidate best;
    for (int d = 0; d <= grid.max_d; ++d)
        for (int D = 0; D <= (seasonal ? grid.max_D : 0); ++D)
            for (int p = 0; p <= grid.max_p; ++p)
                for (int q = 0; q <= grid.max_q; ++q)
                    for (int P = 0; P <= (seasonal ? grid.max_P : 0); ++P)
                        for (int Q = 0; Q <= (seasonal ? grid.max_Q : 0); ++Q) {
                            ArimaOrder order{p, d, q, P, D, Q, seasonal ? m : 0};
                            if (!seasonal) order.m = 0;
                            auto c = fit_candidate(y, order);
                            if (c.ok && !roots_clear_of_unit_circle(c.fit.coefficients, order.m)) c.ok = false;
                            if (c.ok && (!best.ok || c.fit.aicc < best.fit.aicc)) best = std::move(c);
                        }
    if (best.ok) return std::move(best.fit);

    ArimaFit rw;
    rw.order = ArimaOrder{0, 1, 0, 0, 0, 0, 0};
    rw.fallback = true;
    rw.history.assign(y.begin(), y.end());
    double sse = 0.0;
    for (std::size_t t = 1; t < y.size(); ++t) sse += (y[t] - y[t - 1]) * (y[t] - y[t - 1]);
    rw.n_effective = y.size() - 1;
    rw.sigma2 = y.size() > 1 ? sse / static_cast<double>(y.size() - 1) : 0.0;
    rw.aicc = std::numeric_limits<double>::quiet_NaN();
    return rw;
}

std::vector<double> arima_forecast_raw(const ArimaFit& fit, std::size_t horizon) {
    const auto& o = fit.order;
    auto diff = difference(fit.history, o);
    auto& w = diff.levels.back();
    const auto& c = fit.coefficients;
    const auto ar = expand(c.ar, c.seasonal_ar, o.m, -1.0);
    const auto ma = expand(c.ma, c.seasonal_ma, o.m, 1.0);
    const auto start = std::min(static_cast<std::size_t>(max_ar_lag(o)), w.size());
    std::vector<double> e;
    css_residuals(w, c, ar, ma, start, e);

    const double mu = c.has_intercept ? c.intercept : 0.0;
    for (std::size_t h = 0; h < horizon; ++h) {
        const std::size_t t = w.size();
        double pred = mu;
        for (const auto& [lag, coef] : ar) {
            if (t >= static_cast<std::size_t>(lag)) pred += coef * (w[t - static_cast<std::size_t>(lag)] - mu);
        }
        for (const auto& [lag, coef] : ma) {
            if (t >= static_cast<std::size_t>(lag)) pred += coef * e[t - static_cast<std::size_t>(lag)];
        }
        w.push_back(pred);
        e.push_back(0.0);
    }

    // Integrate back through the differencing operations, innermost first.
    for (std::size_t level = diff.lags.size(); level > 0; --level) {
        const auto lag = static_cast<std::size_t>(diff.lags[level - 1]);
        auto& lower = diff.levels[level - 1];
        const auto& upper = diff.levels[level];
        const std::size_t known = lower.size();
        for (std::size_t h = 0; h < horizon; ++h) {
            const std::size_t t = known + h;
            lower.push_back(upper[t - lag] + lower[t - lag]);
        }
    }
    const auto& y = diff.levels.front();
    return {y.end() - static_cast<std::ptrdiff_t>(horizon), y.end()};
}

std::vector<double> arima_forecast(const ArimaFit& fit, std::size_t horizon) {
    auto raw = arima_forecast_raw(fit, horizon);
    for (double& v : raw) v = std::isfinite(v) ? std::max(0.0, v) : 0.0;
    return raw;
}

} // namespace autocast::models
