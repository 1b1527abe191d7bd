#pragma once

#include "autocast/core/series.hpp"
#include "autocast/models/arima.hpp"
#include "autocast/models/gam.hpp"
#include "autocast/models/model_id.hpp"
#include "autocast/models/smoothing.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace autocast::models {

/**
 * Uniform fit/forecast contract shared by every per-product model.
 *
 * fit() may throw when the training data violates the model's preconditions;
 * callers treat that as "model unavailable for this product". Flags record
 * degradations that still produced a usable model.
 */
class Forecaster {
public:
    virtual ~Forecaster() = default;

    virtual ModelId id() const noexcept = 0;
    virtual void fit(const SalesSeries& train) = 0;
    /// `horizon` values starting right after the training data.
    virtual ForecastResult forecast(std::size_t horizon) const = 0;

    const std::vector<std::string>& flags() const noexcept { return flags_; }

protected:
    std::vector<std::string> flags_;
};

class NaiveForecaster final : public Forecaster {
public:
    ModelId id() const noexcept override { return ModelId::Naive; }
    void fit(const SalesSeries& train) override;
    ForecastResult forecast(std::size_t horizon) const override;

private:
    std::optional<SalesSeries> train_;
};

class SmoothingForecaster final : public Forecaster {
public:
    /// ModelId::SES or ModelId::HWES.
    explicit SmoothingForecaster(ModelId id);
    ModelId id() const noexcept override { return id_; }
    void fit(const SalesSeries& train) override;
    ForecastResult forecast(std::size_t horizon) const override;
    const HwesState& state() const noexcept { return state_; }

private:
    ModelId id_;
    HwesState state_;
    std::string product_id_;
    Period next_{Frequency::Monthly, 0};
};

class ArimaForecaster final : public Forecaster {
public:
    /// ModelId::ARIMA or ModelId::SARIMA.
    explicit ArimaForecaster(ModelId id, ArimaGrid grid = {});
    ModelId id() const noexcept override { return id_; }
    void fit(const SalesSeries& train) override;
    ForecastResult forecast(std::size_t horizon) const override;
    const ArimaFit& result() const noexcept { return fit_; }

private:
    ModelId id_;
    ArimaGrid grid_;
    ArimaFit fit_;
    std::string product_id_;
    Period next_{Frequency::Monthly, 0};
};

class GamForecaster final : public Forecaster {
public:
    explicit GamForecaster(GamOptions options = {});
    ModelId id() const noexcept override { return ModelId::GAM; }
    void fit(const SalesSeries& train) override;
    ForecastResult forecast(std::size_t horizon) const override;
    const GamDesign& design() const noexcept { return design_; }

private:
    GamOptions options_;
    GamDesign design_;
    std::string product_id_;
    Period next_{Frequency::Monthly, 0};
};

} // namespace autocast::models
