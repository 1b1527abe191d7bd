#include "autocast/deeplearn/trainer.hpp"

#include "autocast/core/random.hpp"
#include "autocast/deeplearn/adam.hpp"
#include "autocast/models/iterate.hpp"
#include "autocast/models/model_id.hpp"
#include "autocast/models/window_features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace autocast::nn {
namespace {

struct Window {
    std::int64_t target_index;
    std::size_t product;
    std::vector<double> inputs;
    double target;
};

struct Batch {
    Eigen::MatrixXd inputs;
    Eigen::VectorXd targets;
};

Batch gather(const std::vector<Window>& windows, std::span<const std::size_t> idx, std::size_t width) {
    Batch b{Eigen::MatrixXd(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(width)),
            Eigen::VectorXd(static_cast<Eigen::Index>(idx.size()))};
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const auto& w = windows[idx[r]];
        for (std::size_t c = 0; c < width; ++c) b.inputs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = w.inputs[c];
        b.targets[static_cast<Eigen::Index>(r)] = w.target;
    }
    return b;
}

} // namespace

NormStats NormStats::from_corpus(std::span<const SalesSeries> corpus) {
    NormStats stats;
    for (const auto& s : corpus) stats.scale[s.product_id()] = models::product_scale(s.values());
    return stats;
}

double NormStats::scale_for(const SalesSeries& series) const {
    const auto it = scale.find(series.product_id());
    return it != scale.end() ? it->second : models::product_scale(series.values());
}

bool EarlyStopping::update(double loss) {
    ++epoch_;
    if (loss < best_) {
        best_ = loss;
        best_epoch_ = epoch_;
        stale_ = 0;
        return false;
    }
    ++stale_;
    return stale_ >= patience_;
}

TrainedCnn train_shared_cnn(std::span<const SalesSeries> corpus, const CnnConfig& config) {
    config.validate();
    const std::size_t width = config.input_window;
    NormStats stats = NormStats::from_corpus(corpus);

    std::vector<Window> windows;
    for (std::size_t p = 0; p < corpus.size(); ++p) {
        const auto& s = corpus[p];
        if (s.size() < width + 1) continue;
        const double scale = stats.scale_for(s);
        for (std::size_t t = width; t < s.size(); ++t) {
            Window w{(s.start() + static_cast<std::int64_t>(t)).index(), p, {}, s[t] / scale};
            w.inputs.reserve(width);
            for (std::size_t k = t - width; k < t; ++k) w.inputs.push_back(s[k] / scale);
            windows.push_back(std::move(w));
        }
    }
    if (windows.empty()) throw std::invalid_argument("no product has enough history for a CNN training window");

    std::stable_sort(windows.begin(), windows.end(), [](const Window& a, const Window& b) {
        return a.target_index != b.target_index ? a.target_index < b.target_index : a.product < b.product;
    });
    std::size_t n_val = static_cast<std::size_t>(std::ceil(config.validation_fraction * static_cast<double>(windows.size())));
    if (windows.size() < 2) n_val = 0;
    n_val = std::min(n_val, windows.size() - 1);
    const std::size_t n_train = windows.size() - n_val;

    std::vector<std::size_t> train_idx(n_train);
    std::iota(train_idx.begin(), train_idx.end(), 0);
    std::vector<std::size_t> val_idx(n_val);
    std::iota(val_idx.begin(), val_idx.end(), n_train);
    const Batch train_all = gather(windows, train_idx, width);
    const Batch val_all = n_val > 0 ? gather(windows, val_idx, width) : train_all;

    TrainedCnn out{DilatedCnn(config, config.seed), std::move(stats), {}, {}, 0, 0, n_train, n_val};
    auto& net = out.network;
    Eigen::VectorXd params = net.parameters();
    Eigen::VectorXd best_params = params;
    Adam adam(params.size(), config.learning_rate);
    SplitMix64 shuffle_rng(mix64(config.seed ^ 0x5DEECE66DULL));
    EarlyStopping stopper(config.patience);

    out.training_loss.push_back(net.loss(train_all.inputs, train_all.targets));
    out.validation_loss.push_back(net.loss(val_all.inputs, val_all.targets));

    DilatedCnn::Cache cache;
    std::vector<std::size_t> order = train_idx;
    for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffle_rng.below(i)]);
        for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
            const std::size_t end = std::min(order.size(), begin + config.batch_size);
            const Batch batch = gather(windows, std::span(order).subspan(begin, end - begin), width);
            net.forward(batch.inputs, cache);
            adam.step(params, net.backward(cache, batch.targets));
            net.set_parameters(params);
        }
        const double val_loss = net.loss(val_all.inputs, val_all.targets);
        out.training_loss.push_back(net.loss(train_all.inputs, train_all.targets));
        out.validation_loss.push_back(val_loss);
        out.epochs_run = epoch;
        if (!std::isfinite(val_loss)) break;
        const bool stop = stopper.update(val_loss);
        if (stopper.improved()) best_params = params;
        if (stop) break;
    }
    net.set_parameters(best_params);
    out.best_epoch = stopper.best_epoch();
    return out;
}

ForecastResult cnn_forecast(const DilatedCnn& network, const NormStats& stats, const SalesSeries& train,
                            std::size_t horizon) {
    const std::size_t width = network.config().input_window;
    if (train.size() < width)
        throw std::invalid_argument("CNN needs " + std::to_string(width) + " periods of history, '" + train.product_id() +
                                    "' has " + std::to_string(train.size()));
    const double scale = stats.scale_for(train);
    std::vector<double> window(width);
    const auto predictor = [&](std::span<const double> history, const Period&) {
        const auto tail = history.last(width);
        for (std::size_t i = 0; i < width; ++i) window[i] = tail[i] / scale;
        return network.predict_one(window) * scale;
    };
    return models::iterate_one_step(predictor, train, horizon, ModelId::CNN);
}

} // namespace autocast::nn
