#include "autocast/core/metrics.hpp"
#include "autocast/core/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace autocast;

namespace {

// Straight-line reference formulas.
double oracle_rmse(const std::vector<double>& a, const std::vector<double>& p) {
    long double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (long double)(a[i] - p[i]) * (a[i] - p[i]);
    return std::sqrt((double)(s / a.size()));
}

std::optional<double> oracle_nrmse(const std::vector<double>& a, const std::vector<double>& p) {
    double lo = a[0], hi = a[0];
    for (double x : a) lo = std::min(lo, x), hi = std::max(hi, x);
    if (hi == lo) return std::nullopt;
    return oracle_rmse(a, p) / (hi - lo);
}

std::pair<std::optional<double>, std::size_t> oracle_mape(const std::vector<double>& a, const std::vector<double>& p) {
    long double s = 0;
    std::size_t used = 0, skipped = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            ++skipped;
            continue;
        }
        s += std::fabs((long double)(a[i] - p[i]) / a[i]);
        ++used;
    }
    if (used == 0) return {std::nullopt, skipped};
    return {(double)(s / used), skipped};
}

void expect_rel(double got, double want, double tol) {
    EXPECT_LE(std::abs(got - want), tol * std::max(1.0, std::abs(want))) << got << " vs " << want;
}

} // namespace

TEST(Metrics, HandExamples) {
    EXPECT_DOUBLE_EQ(compute_rmse(std::vector<double>{2, 4, 6}, std::vector<double>{2, 5, 8}), std::sqrt(5.0 / 3.0));
    EXPECT_NEAR(*compute_nrmse(std::vector<double>{2, 4, 6}, std::vector<double>{2, 5, 8}), 0.32275, 1e-5);
    EXPECT_EQ(compute_rmse(std::vector<double>{0}, std::vector<double>{3}), 3.0);
    EXPECT_FALSE(compute_nrmse(std::vector<double>{5, 5, 5}, std::vector<double>{1, 2, 3}).has_value());
    const auto m1 = compute_mape(std::vector<double>{100, 200}, std::vector<double>{110, 180});
    EXPECT_NEAR(*m1.value, 0.10, 1e-15);
    EXPECT_EQ(m1.skipped, 0u);
    const auto m2 = compute_mape(std::vector<double>{0, 100}, std::vector<double>{5, 110});
    EXPECT_NEAR(*m2.value, 0.10, 1e-15);
    EXPECT_EQ(m2.skipped, 1u);
    const auto m3 = compute_mape(std::vector<double>{0, 0}, std::vector<double>{1, 1});
    EXPECT_FALSE(m3.value.has_value());
    EXPECT_EQ(m3.skipped, 2u);
}

TEST(Metrics, PerfectPrediction) {
    const std::vector<double> y{3, 1, 4, 1, 5};
    const auto m = compute_metrics(y, y);
    EXPECT_EQ(m.rmse, 0.0);
    EXPECT_EQ(*m.nrmse, 0.0);
    EXPECT_EQ(*m.mape, 0.0);
    EXPECT_EQ(m.mape_skipped, 0u);
}

TEST(Metrics, RejectsBadInput) {
    EXPECT_THROW(compute_rmse(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(compute_rmse(std::vector<double>{1}, std::vector<double>{1, 2}), std::invalid_argument);
    EXPECT_THROW(compute_metrics(std::vector<double>{1, 2}, std::vector<double>{1}), std::invalid_argument);
}

TEST(Metrics, MatchesBruteForceOracle) {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.below(40);
        std::vector<double> a(n), p(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.below(5) == 0 ? 0.0 : rng.uniform(0, 1000);
            p[i] = rng.uniform(0, 1000);
        }
        const auto m = compute_metrics(a, p);
        expect_rel(m.rmse, oracle_rmse(a, p), 1e-12);
        const auto on = oracle_nrmse(a, p);
        ASSERT_EQ(m.nrmse.has_value(), on.has_value());
        if (on) expect_rel(*m.nrmse, *on, 1e-12);
        const auto [om, skipped] = oracle_mape(a, p);
        ASSERT_EQ(m.mape.has_value(), om.has_value());
        if (om) expect_rel(*m.mape, *om, 1e-12);
        EXPECT_EQ(m.mape_skipped, skipped);
    }
}

TEST(Metrics, RmseIsZeroOnlyForEqualVectors) {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a(10), p(10);
        for (std::size_t i = 0; i < 10; ++i) a[i] = p[i] = rng.uniform(0, 10);
        EXPECT_EQ(compute_rmse(a, p), 0.0);
        p[rng.below(10)] += 1e-3;
        EXPECT_GT(compute_rmse(a, p), 0.0);
    }
}

TEST(Metrics, NrmseAffineInvariance) {
    SplitMix64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        const double scale = rng.uniform(0.01, 100);
        const double shift = rng.uniform(-50, 50);
        std::vector<double> a(12), p(12), as(12), ps(12);
        for (std::size_t i = 0; i < 12; ++i) {
            a[i] = rng.uniform(0, 10);
            p[i] = rng.uniform(0, 10);
            as[i] = scale * a[i] + shift;
            ps[i] = scale * p[i] + shift;
        }
        EXPECT_NEAR(*compute_nrmse(as, ps), *compute_nrmse(a, p), 1e-9);
    }
}
