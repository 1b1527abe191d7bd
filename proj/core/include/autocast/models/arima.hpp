#pragma once

#include "autocast/core/series.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace autocast::models {

/// (p,d,q)(P,D,Q)_m. A non-seasonal order has P = D = Q = 0.
struct ArimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;
    int P = 0;
    int D = 0;
    int Q = 0;
    int m = 0;

    /// p,q <= 3; d <= 2; P,Q,D <= 1; seasonal terms need m >= 2.
    void validate() const;
    bool is_seasonal() const noexcept { return P + D + Q > 0; }
    std::string to_string() const;
    bool operator==(const ArimaOrder&) const = default;
};

struct ArimaCoefficients {
    bool has_intercept = false;
    /// Mean of the differenced series (the drift when one difference is taken).
    double intercept = 0.0;
    std::vector<double> ar;
    std::vector<double> ma;
    std::vector<double> seasonal_ar;
    std::vector<double> seasonal_ma;
};

struct ArimaFit {
    ArimaOrder order;
    ArimaCoefficients coefficients;
    double sigma2 = 0.0;
    double aicc = 0.0;
    std::size_t n_effective = 0;
    /// Every grid candidate failed and the (0,1,0) random walk was used.
    bool fallback = false;
    /// Training values, needed to forecast and integrate back.
    std::vector<double> history;
};

struct ArimaGrid {
    int max_p = 3;
    int max_d = 2;
    int max_q = 3;
    int max_P = 1;
    int max_D = 1;
    int max_Q = 1;
};

/**
 * Grid search over the order ranges, each candidate fitted by conditional
 * sum of squares and scored by AICc. An intercept is estimated when the total
 * differencing is at most one. AR and MA polynomials are kept stationary and
 * invertible, and candidates with a root inside modulus 1.01 are discarded.
 * Requires at least 3 seasons for a seasonal fit and 10 points
 * otherwise (std::invalid_argument).
 */
ArimaFit fit_arima(const SalesSeries& train, bool seasonal, const ArimaGrid& grid = {});

/// CSS fit of one fixed order. Throws std::runtime_error if the fit is not finite.
ArimaFit fit_arima_order(std::span<const double> values, const ArimaOrder& order);

/// Point forecasts, floored at zero.
std::vector<double> arima_forecast(const ArimaFit& fit, std::size_t horizon);

/// Same recursion without the floor (used by tests on simulated data).
std::vector<double> arima_forecast_raw(const ArimaFit& fit, std::size_t horizon);

} // namespace autocast::models
