#include "autocast/core/metrics.hpp"
#include "autocast/models/forecaster.hpp"
#include "autocast/models/smoothing.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace autocast;
using namespace autocast::models;
using autocast::testing::monthly;

TEST(Hwes, ForecastRecursion) {
    HwesState s;
    s.kind = SmoothingKind::Simple;
    s.level = 10;
    s.seasonal.assign(12, 0.0);
    EXPECT_EQ(hwes_forecast(s, 3), (std::vector<double>{10, 10, 10}));
    s.trend = 1;
    EXPECT_EQ(hwes_forecast(s, 3), (std::vector<double>{11, 12, 13}));
    s.level = 1;
    s.trend = -2;
    EXPECT_EQ(hwes_forecast(s, 2), (std::vector<double>{0, 0}));
    s.level = 10;
    s.trend = 0;
    s.seasonal[0] = 2;
    s.seasonal[1] = -2;
    const auto f = hwes_forecast(s, 14);
    EXPECT_EQ(f[0], 12);
    EXPECT_EQ(f[1], 8);
    EXPECT_EQ(f[12], 12);
}

TEST(Hwes, ConstantSeries) {
    const auto st = fit_hwes(monthly("A", std::vector<double>(36, 5.0)));
    for (double v : hwes_forecast(st, 12)) EXPECT_NEAR(v, 5.0, 1e-6);
    for (double c : st.seasonal) EXPECT_NEAR(c, 0.0, 1e-6);
}

TEST(Hwes, NoiselessSineContinuation) {
    std::vector<double> y(60);
    for (std::size_t t = 0; t < 60; ++t) y[t] = 100 + 10 * std::sin(2 * std::numbers::pi * static_cast<double>(t) / 12);
    const auto s = monthly("A", y, 0);
    const auto [train, test] = split_holdout(s, 12);
    const auto st = fit_hwes(train);
    EXPECT_EQ(st.kind, SmoothingKind::HoltWinters);
    const auto f = hwes_forecast(st, 12);
    EXPECT_LT(*compute_nrmse(test.values(), f), 0.05);
    double sum = 0;
    for (double c : st.seasonal) sum += c;
    EXPECT_NEAR(sum, 0.0, 1e-9);
}

TEST(Hwes, LinearTrendSlope) {
    std::vector<double> y(30);
    for (std::size_t t = 0; t < 30; ++t) y[t] = 10 + 2 * static_cast<double>(t);
    const auto st = fit_hwes(monthly("A", y, 0));
    const auto f = hwes_forecast(st, 6);
    const double slope = (f[5] - f[0]) / 5.0;
    EXPECT_NEAR(slope, 2.0, 0.1);
}

TEST(Hwes, DegradesWithShortHistory) {
    EXPECT_EQ(fit_hwes(monthly("A", std::vector<double>(20, 3.0))).kind, SmoothingKind::Holt);
    EXPECT_EQ(fit_hwes(monthly("A", {1, 2, 3})).kind, SmoothingKind::Simple);
    SmoothingForecaster f(ModelId::HWES);
    f.fit(monthly("A", autocast::testing::seasonal_values(15)));
    EXPECT_EQ(f.forecast(5).values.size(), 5u);
    EXPECT_FALSE(f.flags().empty());
}

TEST(Ses, SseMatchesIndependentRecursion) {
    const auto v = autocast::testing::seasonal_values(40, 100, 20, 0.5, 5, 3);
    const auto st = fit_ses(monthly("A", v));
    ASSERT_EQ(st.kind, SmoothingKind::Simple);
    // Re-run simple exponential smoothing from the fitted alpha.
    const auto sse_for = [&](double alpha) {
        double level = v[0], sse = 0;
        for (std::size_t t = 1; t < v.size(); ++t) {
            const double e = v[t] - level;
            sse += e * e;
            level += alpha * e;
        }
        return std::pair{sse, level};
    };
    const auto [sse, level] = sse_for(st.alpha);
    EXPECT_NEAR(st.sse, sse, 1e-6 * sse);
    EXPECT_NEAR(st.level, level, 1e-9 * std::abs(level));
    // The fitted alpha is a local optimum.
    for (double a : {st.alpha - 0.01, st.alpha + 0.01})
        if (a > 0.001 && a < 0.999) EXPECT_GE(sse_for(a).first, sse * (1 - 1e-9));
}

TEST(Smoothing, DeterministicAndNonNegative) {
    const auto s = monthly("A", autocast::testing::seasonal_values(48, 100, 150, -2, 10, 7));
    for (auto id : {ModelId::SES, ModelId::HWES}) {
        SmoothingForecaster a(id), b(id);
        a.fit(s);
        b.fit(s);
        const auto fa = a.forecast(30);
        EXPECT_EQ(fa.values, b.forecast(30).values);
        for (double v : fa.values) {
            EXPECT_TRUE(std::isfinite(v));
            EXPECT_GE(v, 0.0);
        }
    }
}
