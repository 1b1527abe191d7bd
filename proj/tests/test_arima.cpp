#include "autocast/core/metrics.hpp"
#include "autocast/models/arima.hpp"
#include "autocast/models/forecaster.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace autocast;
using namespace autocast::models;
using autocast::testing::monthly;

namespace {

std::vector<double> simulate_ar1(double phi, double mean, double sd, std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> x(n);
    double prev = 0.0;
    for (std::size_t i = 0; i < 200; ++i) prev = phi * prev + sd * rng.normal(); // burn-in
    for (std::size_t t = 0; t < n; ++t) {
        prev = phi * prev + sd * rng.normal();
        x[t] = mean + prev;
    }
    return x;
}

} // namespace

TEST(Arima, ForcedAr1RecoversPhi) {
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto x = simulate_ar1(0.8, 100.0, 5.0, 200, seed);
        const auto fit = fit_arima_order(x, ArimaOrder{1, 0, 0});
        ASSERT_EQ(fit.coefficients.ar.size(), 1u);
        if (std::abs(fit.coefficients.ar[0] - 0.8) <= 0.1) ++hits;
        EXPECT_TRUE(fit.coefficients.has_intercept);
        EXPECT_NEAR(fit.coefficients.intercept, 100.0, 10.0);
    }
    EXPECT_GE(hits, 18);
}

TEST(Arima, Ar1ForecastDecaysTowardsMean) {
    const auto x = simulate_ar1(0.8, 100.0, 5.0, 200, 3);
    const auto fit = fit_arima_order(x, ArimaOrder{1, 0, 0});
    const auto f = arima_forecast_raw(fit, 60);
    const double phi = fit.coefficients.ar[0];
    const double mu = fit.coefficients.intercept;
    // Independent recursion: x_{t+1} - mu = phi (x_t - mu).
    double dev = x.back() - mu;
    for (std::size_t h = 0; h < 60; ++h) {
        dev *= phi;
        EXPECT_NEAR(f[h], mu + dev, 1e-8);
    }
}

TEST(Arima, WhiteNoiseSelectsSmallOrder) {
    SplitMix64 rng(11);
    std::vector<double> v(120);
    for (auto& x : v) x = 50.0 + 5.0 * rng.normal();
    const auto s = monthly("A", v);
    const auto fit = fit_arima(s, false);
    EXPECT_LE(fit.order.p + fit.order.q, 1) << fit.order.to_string();
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (double f : arima_forecast(fit, 12)) EXPECT_NEAR(f, mean, 0.05 * mean);
}

TEST(Arima, LinearTrendSelectsDifferencing) {
    SplitMix64 rng(2);
    std::vector<double> v(80);
    for (std::size_t t = 0; t < v.size(); ++t) v[t] = 10.0 + 2.0 * static_cast<double>(t) + rng.normal();
    const auto fit = fit_arima(monthly("A", v), false);
    EXPECT_GE(fit.order.d, 1) << fit.order.to_string();
    const auto f = arima_forecast(fit, 10);
    for (std::size_t h = 0; h < 10; ++h) EXPECT_NEAR(f[h], 10.0 + 2.0 * static_cast<double>(80 + h), 6.0);
}

TEST(Arima, RandomWalkWithDriftForecast) {
    const std::vector<double> x{10, 12, 13, 17, 18, 21, 22, 26};
    const auto fit = fit_arima_order(x, ArimaOrder{0, 1, 0});
    ASSERT_TRUE(fit.coefficients.has_intercept);
    const double drift = (26.0 - 10.0) / 7.0;
    EXPECT_NEAR(fit.coefficients.intercept, drift, 1e-6);
    const auto f = arima_forecast_raw(fit, 3);
    for (std::size_t h = 0; h < 3; ++h) EXPECT_NEAR(f[h], 26.0 + drift * static_cast<double>(h + 1), 1e-6);
}

TEST(Arima, Ma1StaysInvertible) {
    SplitMix64 rng(5);
    std::vector<double> x(200);
    double prev_e = 0;
    for (auto& v : x) {
        const double e = rng.normal();
        v = 20 + e + 0.6 * prev_e;
        prev_e = e;
    }
    const auto fit = fit_arima_order(x, ArimaOrder{0, 0, 1});
    ASSERT_EQ(fit.coefficients.ma.size(), 1u);
    EXPECT_LT(std::abs(fit.coefficients.ma[0]), 1.0);
    EXPECT_NEAR(fit.coefficients.ma[0], 0.6, 0.15);
}

TEST(Arima, SeasonalFitTracksSeasonality) {
    const auto v = autocast::testing::seasonal_values(72, 500, 150, 1.0, 10.0, 4);
    const auto s = monthly("A", v, 0);
    const auto [train, test] = split_holdout(s, 12);
    ArimaForecaster f(ModelId::SARIMA);
    f.fit(train);
    EXPECT_EQ(f.result().order.m, 12);
    const auto r = f.forecast(12);
    EXPECT_LT(*compute_nrmse(test.values(), r.values), 0.15);
}

TEST(Arima, PreconditionsAndDeterminism) {
    EXPECT_THROW(fit_arima(monthly("A", std::vector<double>(9, 1.0)), false), std::invalid_argument);
    EXPECT_THROW(fit_arima(monthly("A", std::vector<double>(35, 1.0)), true), std::invalid_argument);
    EXPECT_THROW((ArimaOrder{4, 0, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((ArimaOrder{0, 0, 0, 1, 0, 0, 0}.validate()), std::invalid_argument);

    const auto s = monthly("A", autocast::testing::seasonal_values(40, 100, 30, 0.5, 4.0, 9));
    ArimaForecaster a(ModelId::ARIMA), b(ModelId::ARIMA);
    a.fit(s);
    b.fit(s);
    EXPECT_EQ(a.forecast(18).values, b.forecast(18).values);
    EXPECT_EQ(a.result().order, b.result().order);
}

TEST(Arima, ForecastsAreFiniteAndNonNegative) {
    SplitMix64 rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> v(40);
        for (auto& x : v) x = rng.below(3) == 0 ? 0.0 : rng.uniform(0, 50);
        ArimaForecaster f(ModelId::ARIMA);
        f.fit(monthly("A", v));
        for (double x : f.forecast(18).values) {
            EXPECT_TRUE(std::isfinite(x));
            EXPECT_GE(x, 0.0);
        }
    }
}
