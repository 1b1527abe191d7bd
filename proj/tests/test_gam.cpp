#include "autocast/core/metrics.hpp"
#include "autocast/models/gam.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace autocast;
using namespace autocast::models;
using autocast::testing::monthly;

TEST(Gam, DesignLayout) {
    const auto d = fit_gam(monthly("A", autocast::testing::seasonal_values(36)));
    EXPECT_EQ(d.fourier_order, 3);
    EXPECT_EQ(d.column_count(), 3u + 6u + 7u);
    EXPECT_EQ(d.terms.front(), GamTerm::Intercept);
    EXPECT_EQ(d.terms[1], GamTerm::LinearTrend);
    EXPECT_EQ(d.terms[2], GamTerm::ExpTrend);
    EXPECT_EQ(d.terms.back(), GamTerm::Spline);
    EXPECT_EQ(d.matrix.rows(), 36);

    const SalesSeries weekly("W", Period(Frequency::Weekly, 0), autocast::testing::seasonal_values(120, 100, 20, 0, 0, 1, 52));
    EXPECT_EQ(fit_gam(weekly).fourier_order, 10);
}

TEST(Gam, ExactLinearRecovery) {
    std::vector<double> y(30);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] = 3.0 + 2.0 * static_cast<double>(t);
    GamOptions opt;
    opt.lambda = 0.0;
    const auto d = fit_gam(monthly("A", y), opt);
    EXPECT_NEAR(d.coefficients[0], 3.0, 1e-6);
    EXPECT_NEAR(d.coefficients[1], 2.0, 1e-6);
    for (Eigen::Index j = 2; j < d.coefficients.size(); ++j) EXPECT_LT(std::abs(d.coefficients[j]), 1e-6);
    const auto f = gam_forecast(d, 5);
    for (std::size_t h = 0; h < 5; ++h) EXPECT_NEAR(f[h], 3.0 + 2.0 * static_cast<double>(30 + h), 1e-5);
}

TEST(Gam, RecoversCosineSeasonality) {
    const auto y = autocast::testing::seasonal_values(48, 1000, 200);
    const auto s = monthly("A", y, 0);
    const auto d = fit_gam(s);
    const auto dec = gam_decompose(d, s.values());
    double dot = 0, na = 0, nb = 0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        const double truth = 200 * std::cos(2 * std::numbers::pi * static_cast<double>(t % 12) / 12);
        dot += truth * dec.seasonal[t];
        na += truth * truth;
        nb += dec.seasonal[t] * dec.seasonal[t];
    }
    EXPECT_GT(dot / std::sqrt(na * nb), 0.95);
}

TEST(Gam, SeasonalPhaseFollowsCalendar) {
    // The same calendar pattern seen from different start months gives the same forecast.
    std::vector<double> full(60);
    for (std::size_t t = 0; t < 60; ++t) full[t] = 500 + 100 * std::sin(2 * std::numbers::pi * static_cast<double>(t) / 12);
    const auto a = monthly("A", std::vector<double>(full.begin(), full.begin() + 36), 0);
    const auto b = monthly("B", std::vector<double>(full.begin() + 5, full.begin() + 41), 5);
    const auto fa = gam_forecast(fit_gam(a), 12);
    const auto fb = gam_forecast(fit_gam(b), 12);
    for (std::size_t h = 0; h + 5 < 12; ++h) EXPECT_NEAR(fa[h + 5], fb[h], 15.0);
}

TEST(Gam, LargePenaltyGivesMean) {
    const auto y = autocast::testing::seasonal_values(36, 300, 80, 2.0, 5.0, 3);
    GamOptions opt;
    opt.lambda = 1e9;
    const auto d = fit_gam(monthly("A", y), opt);
    for (Eigen::Index j = 1; j < d.coefficients.size(); ++j) EXPECT_EQ(d.coefficients[j], 0.0);
    double mean = 0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    for (double f : gam_forecast(d, 6)) EXPECT_NEAR(f, mean, 1e-9 * mean);
}

TEST(Gam, DecompositionAddsUp) {
    const auto s = monthly("A", autocast::testing::seasonal_values(40, 300, 80, 2.0, 5.0, 3));
    const auto d = fit_gam(s);
    const auto dec = gam_decompose(d, s.values());
    for (std::size_t t = 0; t < s.size(); ++t) {
        EXPECT_NEAR(dec.trend[t] + dec.seasonal[t] + dec.external[t], dec.fitted[t], 1e-9);
        EXPECT_NEAR(dec.fitted[t] + dec.residual[t], s[t], 1e-9);
        EXPECT_NEAR(dec.fitted[t], d.row(t).dot(d.coefficients), 1e-9);
    }
}

TEST(Gam, ExternalRegressorsUsedInForecast) {
    const std::size_t n = 36, h = 6;
    ExternalRegressors x;
    x.names = {"promo"};
    x.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n + h), 1);
    std::vector<double> y(n);
    for (std::size_t t = 0; t < n + h; ++t) x.values(static_cast<Eigen::Index>(t), 0) = (t % 5 == 0) ? 1.0 : 0.0;
    for (std::size_t t = 0; t < n; ++t) y[t] = 100 + 50 * x.values(static_cast<Eigen::Index>(t), 0);
    GamOptions opt;
    opt.lambda = 0.0;
    const auto d = fit_gam(monthly("A", y), opt, &x);
    EXPECT_EQ(d.n_external, 1u);
    const auto f = gam_forecast(d, h, &x);
    // Intercept, trend and spline columns are collinear at lambda 0, so only the
    // promo effect is identified: t = 40 is a promo period, 39 and 41 are not.
    EXPECT_NEAR(f[4] - 0.5 * (f[3] + f[5]), 50.0, 0.5);
    const auto dec = gam_decompose(d, y, &x);
    for (std::size_t t = 0; t < n; ++t) {
        EXPECT_NEAR(dec.fitted[t], y[t], 0.5);
        EXPECT_NEAR(dec.external[t], 50.0 * x.values(static_cast<Eigen::Index>(t), 0), 1.0);
    }
    EXPECT_THROW(gam_forecast(d, h + 1, &x), std::invalid_argument);
}

TEST(Gam, SplineHeldBeyondTrainingRange) {
    const auto s = monthly("A", autocast::testing::seasonal_values(36, 300, 0, 3.0, 10.0, 5));
    const auto d = fit_gam(s);
    const auto last = d.row(35);
    const auto beyond = d.row(60);
    for (std::size_t j = 0; j < d.terms.size(); ++j)
        if (d.terms[j] == GamTerm::Spline) EXPECT_EQ(last[static_cast<Eigen::Index>(j)], beyond[static_cast<Eigen::Index>(j)]);
}

TEST(Gam, ShortInputRejectedAndDeterministic) {
    EXPECT_THROW(fit_gam(monthly("A", std::vector<double>(11, 1.0))), std::invalid_argument);
    const auto s = monthly("A", autocast::testing::seasonal_values(30, 100, 30, 1, 3, 2));
    EXPECT_EQ(gam_forecast(fit_gam(s), 18), gam_forecast(fit_gam(s), 18));
}
