#include "autocast/pipeline/pipeline.hpp"

#include "autocast/deeplearn/trainer.hpp"
#include "autocast/models/boosted_trees.hpp"
#include "autocast/models/ensemble.hpp"
#include "autocast/models/forecaster.hpp"
#include "autocast/pipeline/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

namespace autocast::pipeline {

const ModelScore* ProductValidation::score(ModelId id) const {
    for (const auto& s : scores)
        if (s.model == id) return &s;
    return nullptr;
}

const ProductValidation* ValidationReport::find(std::string_view product_id) const {
    auto it = std::lower_bound(products.begin(), products.end(), product_id,
                               [](const ProductValidation& p, std::string_view id) { return p.product_id < id; });
    return it != products.end() && it->product_id == product_id ? &*it : nullptr;
}

const ForecastResult* ProductForecasts::forecast(ModelId id) const {
    for (const auto& f : forecasts)
        if (f.model_id == id) return &f;
    return nullptr;
}

const ProductForecasts* ForecastBundle::find(std::string_view product_id) const {
    auto it = std::lower_bound(products.begin(), products.end(), product_id,
                               [](const ProductForecasts& p, std::string_view id) { return p.product_id < id; });
    return it != products.end() && it->product_id == product_id ? &*it : nullptr;
}

std::size_t holdout_for(const SalesSeries& series, const PipelineConfig& config) {
    const std::size_t n = series.size();
    const auto m = static_cast<std::size_t>(season_length(series.frequency()));
    switch (check_validity(series)) {
    case Validity::Excluded: return 0;
    case Validity::ShortHistory: return std::max<std::size_t>(3, n - m);
    case Validity::FullPipeline: break;
    }
    // A configured holdout that would leave less than one season to train on
    // falls back to the short-history rule.
    if (config.holdout + m > n) return std::max<std::size_t>(3, n - m);
    return config.holdout;
}

namespace {

std::string name(ModelId id) { return std::string(to_string(id)); }

std::vector<SalesSeries> sorted_corpus(std::span<const SalesSeries> corpus) {
    std::vector<SalesSeries> out(corpus.begin(), corpus.end());
    std::sort(out.begin(), out.end(),
              [](const SalesSeries& a, const SalesSeries& b) { return a.product_id() < b.product_id(); });
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].product_id() == out[i - 1].product_id())
            throw std::invalid_argument("duplicate product id in corpus: " + out[i].product_id());
    return out;
}

/// Shared-weight models trained once per stage.
struct SharedModels {
    std::optional<models::SharedTreeModel> trees;
    std::string trees_error;
    std::optional<nn::TrainedCnn> cnn;
    std::string cnn_error;
    std::size_t cnn_window = 0;
};

SharedModels train_shared(std::span<const SalesSeries> histories, const PipelineConfig& config) {
    SharedModels shared;
    if (config.enabled(ModelId::BoostedTree)) {
        try {
            shared.trees = models::train_shared_trees(histories, {}, models::WindowOptions{config.boosted_log_target});
        } catch (const std::exception& e) {
            shared.trees_error = e.what();
        }
    }
    auto cnn_config = nn::CnnConfig::for_frequency(config.frequency);
    cnn_config.seed = config.seed;
    shared.cnn_window = cnn_config.input_window;
    if (config.enabled(ModelId::CNN)) {
        try {
            shared.cnn = nn::train_shared_cnn(histories, cnn_config);
        } catch (const std::exception& e) {
            shared.cnn_error = e.what();
        }
    }
    return shared;
}

struct ModelRun {
    ModelId id;
    std::optional<ForecastResult> forecast;
    std::vector<std::string> flags;
    /// Precondition not met; the model is not applicable to this history.
    bool skipped = false;
    std::string reason;
};

ForecastResult run_forecaster(models::Forecaster& f, const SalesSeries& train, std::size_t horizon,
                              std::vector<std::string>& flags) {
    f.fit(train);
    auto result = f.forecast(horizon);
    flags = f.flags();
    return result;
}

ModelRun run_model(ModelId id, const SalesSeries& train, std::size_t horizon, const SharedModels& shared,
                   const PipelineConfig& config) {
    ModelRun run{id, std::nullopt, {}, false, {}};
    const std::size_t n = train.size();
    const auto m = static_cast<std::size_t>(season_length(train.frequency()));
    const auto skip = [&](std::string reason) {
        run.skipped = true;
        run.reason = std::move(reason);
        return run;
    };
    try {
        switch (id) {
        case ModelId::Naive: {
            models::NaiveForecaster f;
            run.forecast = run_forecaster(f, train, horizon, run.flags);
            break;
        }
        case ModelId::SES:
        case ModelId::HWES: {
            models::SmoothingForecaster f(id);
            run.forecast = run_forecaster(f, train, horizon, run.flags);
            break;
        }
        case ModelId::ARIMA:
        case ModelId::SARIMA: {
            if (id == ModelId::ARIMA && n < 10) return skip("needs at least 10 observations");
            if (id == ModelId::SARIMA && n < 3 * m) return skip("needs at least three seasons");
            models::ArimaForecaster f(id);
            run.forecast = run_forecaster(f, train, horizon, run.flags);
            break;
        }
        case ModelId::GAM: {
            models::GamOptions options;
            options.lambda_grid = config.gam_lambda_grid;
            models::GamForecaster f(options);
            run.forecast = run_forecaster(f, train, horizon, run.flags);
            break;
        }
        case ModelId::BoostedTree:
            if (!shared.trees) return skip("shared model unavailable: " + shared.trees_error);
            run.forecast = shared.trees->forecast(train, horizon);
            break;
        case ModelId::CNN:
            if (!shared.cnn) return skip("shared model unavailable: " + shared.cnn_error);
            if (n < shared.cnn_window + 1) return skip("history shorter than the input window");
            run.forecast = nn::cnn_forecast(shared.cnn->network, shared.cnn->stats, train, horizon);
            break;
        case ModelId::EnsembleMedian:
            return skip("ensemble is aggregated from members");
        }
        run.forecast->validate();
        if (run.forecast->values.size() != horizon) throw std::runtime_error("wrong forecast length");
    } catch (const std::exception& e) {
        run.forecast.reset();
        run.reason = e.what();
    }
    return run;
}

/// Runs `ids` (the ensemble last, from whatever members succeeded).
std::vector<ModelRun> run_models(std::span<const ModelId> ids, const SalesSeries& train, std::size_t horizon,
                                 const SharedModels& shared, const PipelineConfig& config) {
    std::vector<ModelRun> runs;
    bool want_ensemble = false;
    for (auto id : ids) {
        if (id == ModelId::EnsembleMedian) {
            want_ensemble = true;
            continue;
        }
        runs.push_back(run_model(id, train, horizon, shared, config));
    }
    if (want_ensemble) {
        ModelRun run{ModelId::EnsembleMedian, std::nullopt, {}, false, {}};
        std::vector<ForecastResult> members;
        for (auto member : config.ensemble_members)
            for (const auto& r : runs)
                if (r.id == member && r.forecast) members.push_back(*r.forecast);
        if (members.size() < 2) {
            run.skipped = true;
            run.reason = "fewer than two ensemble members available";
        } else {
            try {
                run.forecast = models::ensemble_forecast(members, config.ensemble_aggregate);
                run.forecast->validate();
            } catch (const std::exception& e) {
                run.forecast.reset();
                run.reason = e.what();
            }
        }
        runs.push_back(std::move(run));
    }
    std::sort(runs.begin(), runs.end(), [](const ModelRun& a, const ModelRun& b) { return a.id < b.id; });
    return runs;
}

/// Holdout RMSE values closer than this (relative to the holdout level) are
/// treated as ties so floating-point noise cannot override the priority order.
double tie_tolerance(std::span<const double> actual) {
    double mean = 0.0;
    for (double v : actual) mean += std::abs(v);
    mean /= static_cast<double>(actual.size());
    return 1e-9 * std::max(1.0, mean);
}

ModelId recommend(const std::vector<ModelScore>& scores, double tolerance) {
    const ModelScore* best = &scores.front();
    for (const auto& s : scores) {
        if (s.metrics.rmse < best->metrics.rmse - tolerance ||
            (std::abs(s.metrics.rmse - best->metrics.rmse) <= tolerance &&
             priority_rank(s.model) < priority_rank(best->model)))
            best = &s;
    }
    return best->model;
}

// Naive always runs: evaluation measures every product against it.
std::vector<ModelId> enabled_models(const PipelineConfig& config) {
    std::vector<ModelId> ids = config.models;
    if (std::find(ids.begin(), ids.end(), ModelId::Naive) == ids.end()) ids.push_back(ModelId::Naive);
    std::sort(ids.begin(), ids.end());
    return ids;
}

} // namespace

ValidationReport run_validation(std::span<const SalesSeries> corpus, const PipelineConfig& config) {
    config.validate();
    const auto products = sorted_corpus(corpus);
    for (const auto& s : products)
        if (s.frequency() != config.frequency)
            throw std::invalid_argument("product " + s.product_id() + " does not match the configured frequency");

    ValidationReport report;
    report.products.resize(products.size());

    std::vector<std::size_t> holdouts(products.size());
    std::vector<SalesSeries> trains;
    for (std::size_t i = 0; i < products.size(); ++i) {
        holdouts[i] = holdout_for(products[i], config);
        if (holdouts[i] > 0) trains.push_back(split_holdout(products[i], holdouts[i]).first);
    }

    const SharedModels shared = train_shared(trains, config);
    if (config.enabled(ModelId::BoostedTree) && !shared.trees)
        report.flags.push_back("BoostedTree training failed: " + shared.trees_error);
    if (config.enabled(ModelId::CNN) && !shared.cnn) report.flags.push_back("CNN training failed: " + shared.cnn_error);

    const auto ids = enabled_models(config);
    parallel_for(products.size(), config.workers, [&](std::size_t i) {
        const SalesSeries& series = products[i];
        ProductValidation& pv = report.products[i];
        pv.product_id = series.product_id();
        pv.validity = check_validity(series);
        pv.length = series.size();
        if (pv.validity == Validity::Excluded) {
            pv.exclusion_reason = "history of " + std::to_string(series.size()) + " periods is shorter than one season";
            return;
        }
        pv.holdout = holdouts[i];
        const auto [train, test] = split_holdout(series, pv.holdout);
        for (auto& run : run_models(ids, train, pv.holdout, shared, config)) {
            if (!run.forecast) {
                pv.skipped.push_back({run.id, run.reason});
                pv.flags.push_back(name(run.id) + (run.skipped ? " skipped: " : " failed: ") + run.reason);
                continue;
            }
            for (const auto& f : run.flags) pv.flags.push_back(name(run.id) + ": " + f);
            pv.scores.push_back({run.id, compute_metrics(test.values(), run.forecast->values), run.flags});
        }
        if (pv.scores.empty()) {
            pv.flags.push_back("NoModel");
            pv.recommended = ModelId::Naive;
        } else {
            pv.recommended = recommend(pv.scores, tie_tolerance(test.values()));
        }
    });
    return report;
}

ForecastBundle finalize_and_forecast(std::span<const SalesSeries> corpus, const ValidationReport& report,
                                     const PipelineConfig& config) {
    config.validate();
    const auto products = sorted_corpus(corpus);

    struct Job {
        const SalesSeries* series;
        const ProductValidation* validation;
    };
    std::vector<Job> jobs;
    std::vector<SalesSeries> histories;
    for (const auto& s : products) {
        const auto* pv = report.find(s.product_id());
        if (!pv) throw std::invalid_argument("product " + s.product_id() + " is missing from the validation report");
        if (!pv->recommended) continue;
        jobs.push_back({&s, pv});
        histories.push_back(s);
    }

    ForecastBundle bundle;
    bundle.horizon = config.horizon;
    bundle.products.resize(jobs.size());

    const SharedModels shared = train_shared(histories, config);
    // Validation-stage shared models, rebuilt only when a final retrain failed.
    std::optional<SharedModels> validation_shared;
    if ((config.enabled(ModelId::BoostedTree) && !shared.trees) || (config.enabled(ModelId::CNN) && !shared.cnn)) {
        std::vector<SalesSeries> trains;
        for (const auto& job : jobs) trains.push_back(split_holdout(*job.series, job.validation->holdout).first);
        validation_shared = train_shared(trains, config);
        bundle.flags.push_back("shared model retrain failed; validation-stage weights reused");
    }
    const auto fallback_shared = [&]() -> const SharedModels& {
        return validation_shared ? *validation_shared : shared;
    };

    parallel_for(jobs.size(), config.workers, [&](std::size_t i) {
        const SalesSeries& series = *jobs[i].series;
        const ProductValidation& pv = *jobs[i].validation;
        ProductForecasts& pf = bundle.products[i];
        pf.product_id = series.product_id();
        pf.recommended = pv.recommended;
        pf.observed.assign(series.values().begin(), series.values().end());
        for (const auto& f : pv.flags)
            if (f == "NoModel") pf.flags.push_back(f);

        std::vector<ModelId> ids;
        for (const auto& s : pv.scores) ids.push_back(s.model);
        if (ids.empty()) ids.push_back(ModelId::Naive);

        const Period next = series.last() + 1;
        auto runs = run_models(ids, series, config.horizon, shared, config);
        for (auto& run : runs) {
            if (run.forecast) {
                for (const auto& f : run.flags) pf.flags.push_back(name(run.id) + ": " + f);
                pf.forecasts.push_back(std::move(*run.forecast));
                continue;
            }
            // Refit failed: forecast from the validation-stage fit across the
            // holdout and keep the final `horizon` values.
            const auto train = split_holdout(series, pv.holdout).first;
            std::vector<ModelId> retry{run.id};
            if (run.id == ModelId::EnsembleMedian) retry.insert(retry.end(), config.ensemble_members.begin(),
                                                                config.ensemble_members.end());
            const auto& shared_models = run.id == ModelId::BoostedTree || run.id == ModelId::CNN ||
                                                run.id == ModelId::EnsembleMedian
                                            ? fallback_shared()
                                            : shared;
            auto again = run_models(retry, train, pv.holdout + config.horizon, shared_models, config);
            auto it = std::find_if(again.begin(), again.end(), [&](const ModelRun& r) { return r.id == run.id; });
            if (it == again.end() || !it->forecast) {
                pf.flags.push_back(name(run.id) + " unavailable after refit failure: " + run.reason);
                continue;
            }
            auto& values = it->forecast->values;
            ForecastResult result{series.product_id(), run.id, next,
                                  std::vector<double>(values.end() - static_cast<std::ptrdiff_t>(config.horizon),
                                                      values.end())};
            pf.flags.push_back(name(run.id) + ": refit failed (" + run.reason + "), validation fit reused");
            pf.forecasts.push_back(std::move(result));
        }
        std::sort(pf.forecasts.begin(), pf.forecasts.end(),
                  [](const ForecastResult& a, const ForecastResult& b) { return a.model_id < b.model_id; });
        if (!pf.forecast(*pf.recommended)) {
            pf.flags.push_back("recommended model " + name(*pf.recommended) + " unavailable; Naive used");
            pf.recommended = ModelId::Naive;
            if (!pf.forecast(ModelId::Naive)) {
                models::NaiveForecaster naive;
                naive.fit(series);
                pf.forecasts.insert(pf.forecasts.begin(), naive.forecast(config.horizon));
            }
        }

        try {
            models::GamOptions options;
            options.lambda_grid = config.gam_lambda_grid;
            const auto design = models::fit_gam(series, options);
            pf.decomposition = models::gam_decompose(design, series.values());
        } catch (const std::exception& e) {
            pf.flags.push_back(std::string("decomposition unavailable: ") + e.what());
        }
    });
    return bundle;
}

} // namespace autocast::pipeline
