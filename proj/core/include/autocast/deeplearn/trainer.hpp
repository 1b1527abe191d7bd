#pragma once

#include "autocast/core/series.hpp"
#include "autocast/deeplearn/network.hpp"

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace autocast::nn {

/// Per-product normalisation scales (mean of the training values, at least 1).
struct NormStats {
    std::map<std::string, double> scale;

    static NormStats from_corpus(std::span<const SalesSeries> corpus);
    /// Stored scale of the product, or the scale computed from `series` when absent.
    double scale_for(const SalesSeries& series) const;
};

/// Stops after `patience` consecutive epochs without a strictly lower loss.
class EarlyStopping {
public:
    explicit EarlyStopping(std::size_t patience) : patience_(patience) {}

    /// Records one epoch's loss; true when training should stop now.
    bool update(double loss);
    bool improved() const noexcept { return stale_ == 0; }
    double best_loss() const noexcept { return best_; }
    /// 1-based epoch of the best loss (0 before any update).
    std::size_t best_epoch() const noexcept { return best_epoch_; }
    std::size_t epochs() const noexcept { return epoch_; }

private:
    std::size_t patience_;
    double best_ = std::numeric_limits<double>::infinity();
    std::size_t best_epoch_ = 0;
    std::size_t epoch_ = 0;
    std::size_t stale_ = 0;
};

struct TrainedCnn {
    DilatedCnn network;
    NormStats stats;
    /// Loss on the early-stopping windows; entry 0 is before the first epoch.
    std::vector<double> validation_loss;
    /// Loss on the training windows; entry 0 is before the first epoch.
    std::vector<double> training_loss;
    std::size_t best_epoch = 0;
    std::size_t epochs_run = 0;
    std::size_t training_windows = 0;
    std::size_t validation_windows = 0;
};

/**
 * Trains one network on windows pooled from every product.
 *
 * Each product contributes a window for every target period with at least
 * input_window earlier values, normalised by the product's scale. Windows are
 * ordered by target period; the latest validation_fraction of them drive early
 * stopping. Mini-batch Adam with a seeded shuffle; the best epoch's weights
 * are returned. Throws std::invalid_argument when no window exists.
 */
TrainedCnn train_shared_cnn(std::span<const SalesSeries> corpus, const CnnConfig& config);

/// Iterated one-step forecast, denormalised and floored at zero. Throws
/// std::invalid_argument when `train` is shorter than the input window.
ForecastResult cnn_forecast(const DilatedCnn& network, const NormStats& stats, const SalesSeries& train,
                            std::size_t horizon);

} // namespace autocast::nn
