#include "autocast/models/forecaster.hpp"
#include "autocast/pipeline/pipeline.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace autocast;
using namespace autocast::pipeline;
using autocast::testing::monthly;
using autocast::testing::seasonal_values;

namespace {

PipelineConfig fast_config(std::vector<ModelId> models) {
    auto c = PipelineConfig::defaults(Frequency::Monthly);
    c.models = std::move(models);
    c.ensemble_members.clear();
    for (auto m : c.models)
        if (m == ModelId::HWES || m == ModelId::GAM || m == ModelId::ARIMA || m == ModelId::BoostedTree)
            c.ensemble_members.push_back(m);
    c.workers = 1;
    return c;
}

} // namespace

TEST(Pipeline, PeriodicProductRecommendsHwes) {
    const std::vector<SalesSeries> corpus{monthly("P", seasonal_values(48))};
    const auto report = run_validation(corpus, fast_config({ModelId::Naive, ModelId::HWES, ModelId::SES, ModelId::GAM}));
    ASSERT_EQ(report.products.size(), 1u);
    const auto& p = report.products[0];
    EXPECT_EQ(p.validity, Validity::FullPipeline);
    ASSERT_TRUE(p.recommended.has_value());
    EXPECT_EQ(*p.recommended, ModelId::HWES);
    EXPECT_LT(*p.score(ModelId::HWES)->metrics.nrmse, 0.05);
}

TEST(Pipeline, ShortSeriesExcludedAndShortHistoryHoldout) {
    const std::vector<SalesSeries> corpus{monthly("tiny", seasonal_values(11)), monthly("short", seasonal_values(20)),
                                          monthly("full", seasonal_values(40))};
    const auto cfg = fast_config({ModelId::Naive, ModelId::SES});
    const auto report = run_validation(corpus, cfg);
    const auto* tiny = report.find("tiny");
    ASSERT_NE(tiny, nullptr);
    EXPECT_EQ(tiny->validity, Validity::Excluded);
    EXPECT_FALSE(tiny->recommended.has_value());
    EXPECT_FALSE(tiny->exclusion_reason.empty());
    const auto* s = report.find("short");
    EXPECT_EQ(s->validity, Validity::ShortHistory);
    EXPECT_EQ(s->holdout, 8u);
    EXPECT_EQ(report.find("full")->holdout, 12u);

    const auto bundle = finalize_and_forecast(corpus, report, cfg);
    EXPECT_EQ(bundle.find("tiny"), nullptr);
    EXPECT_NE(bundle.find("short"), nullptr);
}

TEST(Pipeline, TiesBrokenByPriority) {
    // A constant series is matched exactly by both Naive and SES.
    const std::vector<SalesSeries> corpus{monthly("C", std::vector<double>(36, 50.0))};
    const auto report = run_validation(corpus, fast_config({ModelId::Naive, ModelId::SES}));
    ASSERT_TRUE(report.products[0].recommended.has_value());
    EXPECT_EQ(*report.products[0].recommended, ModelId::SES);
}

TEST(Pipeline, ScoresUseOnlyTheTrainPrefix) {
    auto values = seasonal_values(48, 1000, 200, 3, 30, 5);
    const auto original = monthly("L", values);
    for (std::size_t t = 36; t < 48; ++t) values[t] *= 1.7;
    const auto altered = monthly("L", values);
    const auto cfg = fast_config({ModelId::Naive, ModelId::HWES, ModelId::ARIMA});

    for (const auto& series : {original, altered}) {
        const auto report = run_validation(std::vector<SalesSeries>{series}, cfg);
        const auto [train, holdout] = split_holdout(series, 12);
        for (auto id : {ModelId::Naive, ModelId::HWES, ModelId::ARIMA}) {
            std::unique_ptr<models::Forecaster> f;
            if (id == ModelId::Naive) f = std::make_unique<models::NaiveForecaster>();
            else if (id == ModelId::HWES) f = std::make_unique<models::SmoothingForecaster>(id);
            else f = std::make_unique<models::ArimaForecaster>(id);
            f->fit(train);
            const auto direct = f->forecast(12);
            const auto expected = compute_metrics(holdout.values(), direct.values);
            const auto* score = report.products[0].score(id);
            ASSERT_NE(score, nullptr) << to_string(id);
            EXPECT_DOUBLE_EQ(score->metrics.rmse, expected.rmse) << to_string(id);
        }
    }
}

TEST(Pipeline, RecommendedHasMinimalRmse) {
    std::vector<SalesSeries> corpus;
    for (int i = 0; i < 6; ++i)
        corpus.push_back(monthly("R" + std::to_string(i), seasonal_values(44, 800, 150, i * 2.0, 60, i + 1)));
    const auto report = run_validation(corpus, fast_config({ModelId::Naive, ModelId::HWES, ModelId::SES, ModelId::GAM,
                                                            ModelId::ARIMA, ModelId::EnsembleMedian}));
    for (const auto& p : report.products) {
        ASSERT_TRUE(p.recommended.has_value());
        const double best = p.score(*p.recommended)->metrics.rmse;
        for (const auto& s : p.scores) EXPECT_LE(best, s.metrics.rmse * (1 + 1e-9) + 1e-9) << p.product_id;
    }
}

TEST(Pipeline, ParallelMatchesSerial) {
    std::vector<SalesSeries> corpus;
    for (int i = 0; i < 8; ++i)
        corpus.push_back(monthly("W" + std::to_string(i), seasonal_values(40, 500, 100, 1.5, 25, 20 + i)));
    auto cfg = fast_config({ModelId::Naive, ModelId::HWES, ModelId::GAM, ModelId::BoostedTree, ModelId::EnsembleMedian});
    const auto serial = run_validation(corpus, cfg);
    const auto serial_fc = finalize_and_forecast(corpus, serial, cfg);
    cfg.workers = 4;
    const auto parallel = run_validation(corpus, cfg);
    const auto parallel_fc = finalize_and_forecast(corpus, parallel, cfg);
    ASSERT_EQ(serial.products.size(), parallel.products.size());
    for (std::size_t i = 0; i < serial.products.size(); ++i) {
        EXPECT_EQ(serial.products[i].recommended, parallel.products[i].recommended);
        for (std::size_t k = 0; k < serial.products[i].scores.size(); ++k)
            EXPECT_EQ(serial.products[i].scores[k].metrics.rmse, parallel.products[i].scores[k].metrics.rmse);
        for (std::size_t k = 0; k < serial_fc.products[i].forecasts.size(); ++k)
            EXPECT_EQ(serial_fc.products[i].forecasts[k].values, parallel_fc.products[i].forecasts[k].values);
    }
}

TEST(Pipeline, ForecastsStartAfterHistoryWithConfiguredHorizon) {
    const std::vector<SalesSeries> monthly_corpus{monthly("M", seasonal_values(40))};
    const auto cfg = fast_config({ModelId::Naive, ModelId::HWES, ModelId::GAM});
    const auto report = run_validation(monthly_corpus, cfg);
    const auto bundle = finalize_and_forecast(monthly_corpus, report, cfg);
    ASSERT_EQ(bundle.products.size(), 1u);
    const auto& p = bundle.products[0];
    ASSERT_TRUE(p.decomposition.has_value());
    for (const auto& f : p.forecasts) {
        EXPECT_EQ(f.values.size(), 18u);
        EXPECT_EQ(f.start, monthly_corpus[0].last() + 1);
        EXPECT_NO_THROW(f.validate());
    }
    EXPECT_NE(p.forecast(*p.recommended), nullptr);

    auto wcfg = PipelineConfig::defaults(Frequency::Weekly);
    wcfg.models = {ModelId::Naive, ModelId::SES};
    wcfg.ensemble_members.clear();
    wcfg.workers = 1;
    const std::vector<SalesSeries> weekly_corpus{
        SalesSeries("W", Period(Frequency::Weekly, 100), seasonal_values(120, 300, 50, 0, 5, 3, 52))};
    const auto wreport = run_validation(weekly_corpus, wcfg);
    EXPECT_EQ(wreport.products[0].holdout, 52u);
    const auto wbundle = finalize_and_forecast(weekly_corpus, wreport, wcfg);
    for (const auto& f : wbundle.products[0].forecasts) EXPECT_EQ(f.values.size(), 78u);
}

TEST(Pipeline, EmptyCorpus) {
    const std::vector<SalesSeries> none;
    const auto cfg = fast_config({ModelId::Naive});
    const auto report = run_validation(none, cfg);
    EXPECT_TRUE(report.products.empty());
    EXPECT_TRUE(finalize_and_forecast(none, report, cfg).products.empty());
}

TEST(Pipeline, NaiveAlwaysRuns) {
    const std::vector<SalesSeries> corpus{monthly("N", seasonal_values(36))};
    auto cfg = fast_config({ModelId::SES});
    const auto report = run_validation(corpus, cfg);
    EXPECT_NE(report.products[0].score(ModelId::Naive), nullptr);
    const auto bundle = finalize_and_forecast(corpus, report, cfg);
    EXPECT_NE(bundle.products[0].forecast(ModelId::Naive), nullptr);
}
