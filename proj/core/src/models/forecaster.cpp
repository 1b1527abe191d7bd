#include "autocast/models/forecaster.hpp"

#include "autocast/models/naive.hpp"

#include <stdexcept>

namespace autocast::models {

void NaiveForecaster::fit(const SalesSeries& train) { train_ = train; }

ForecastResult NaiveForecaster::forecast(std::size_t horizon) const {
    if (!train_) throw std::logic_error("Naive model used before fit");
    return naive_forecast(*train_, horizon);
}

SmoothingForecaster::SmoothingForecaster(ModelId id) : id_(id) {
    if (id != ModelId::SES && id != ModelId::HWES) throw std::invalid_argument("smoothing forecaster must be SES or HWES");
}

void SmoothingForecaster::fit(const SalesSeries& train) {
    flags_.clear();
    state_ = id_ == ModelId::SES ? fit_ses(train) : fit_hwes(train);
    product_id_ = train.product_id();
    next_ = train.last() + 1;
    if (state_.fallback) flags_.push_back("ses_fallback");
    if (id_ == ModelId::HWES && state_.kind == SmoothingKind::Holt) flags_.push_back("degraded_to_holt");
    if (id_ == ModelId::HWES && state_.kind == SmoothingKind::Simple && !state_.fallback) flags_.push_back("degraded_to_ses");
}

ForecastResult SmoothingForecaster::forecast(std::size_t horizon) const {
    return ForecastResult{product_id_, id_, next_, hwes_forecast(state_, horizon)};
}

ArimaForecaster::ArimaForecaster(ModelId id, ArimaGrid grid) : id_(id), grid_(grid) {
    if (id != ModelId::ARIMA && id != ModelId::SARIMA) throw std::invalid_argument("ARIMA forecaster must be ARIMA or SARIMA");
}

void ArimaForecaster::fit(const SalesSeries& train) {
    flags_.clear();
    fit_ = fit_arima(train, id_ == ModelId::SARIMA, grid_);
    product_id_ = train.product_id();
    next_ = train.last() + 1;
    if (fit_.fallback) flags_.push_back("random_walk_fallback");
}

ForecastResult ArimaForecaster::forecast(std::size_t horizon) const {
    return ForecastResult{product_id_, id_, next_, arima_forecast(fit_, horizon)};
}

GamForecaster::GamForecaster(GamOptions options) : options_(std::move(options)) {}

void GamForecaster::fit(const SalesSeries& train) {
    flags_.clear();
    design_ = fit_gam(train, options_);
    product_id_ = train.product_id();
    next_ = train.last() + 1;
}

ForecastResult GamForecaster::forecast(std::size_t horizon) const {
    return ForecastResult{product_id_, ModelId::GAM, next_, gam_forecast(design_, horizon)};
}

} // namespace autocast::models
