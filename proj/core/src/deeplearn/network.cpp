#include "autocast/deeplearn/network.hpp"

#include "autocast/core/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace autocast::nn {

CnnConfig CnnConfig::for_frequency(Frequency frequency) {
    CnnConfig c;
    c.input_window = frequency == Frequency::Monthly ? 24 : 104;
    return c;
}

int CnnConfig::receptive_field() const noexcept {
    int rf = 1;
    for (int d : dilations) rf += (kernel - 1) * d;
    return rf;
}

void CnnConfig::validate() const {
    if (kernel < 1 || channels < 1 || dilations.empty()) throw std::invalid_argument("invalid CNN architecture");
    for (int d : dilations)
        if (d < 1) throw std::invalid_argument("CNN dilations must be positive");
    if (static_cast<std::size_t>(receptive_field()) > input_window)
        throw std::invalid_argument("CNN receptive field exceeds the input window");
    if (batch_size < 1 || !(learning_rate > 0.0)) throw std::invalid_argument("invalid CNN training settings");
    if (validation_fraction < 0.0 || validation_fraction >= 1.0)
        throw std::invalid_argument("validation_fraction must lie in [0, 1)");
}

DilatedCnn::DilatedCnn(CnnConfig config, std::uint64_t seed) : config_(std::move(config)), seed_(seed) {
    config_.validate();
    const std::size_t total = head_offset() + static_cast<std::size_t>(config_.channels) + 1;
    params_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total));
    SplitMix64 rng(seed);
    for (std::size_t l = 0; l < config_.dilations.size(); ++l) {
        const int in = layer_in_channels(l);
        const double limit = std::sqrt(6.0 / static_cast<double>(in * config_.kernel));
        const std::size_t begin = layer_offset(l);
        const std::size_t weights = static_cast<std::size_t>(config_.kernel * config_.channels * in);
        for (std::size_t i = 0; i < weights; ++i) params_[static_cast<Eigen::Index>(begin + i)] = rng.uniform(-limit, limit);
    }
    const double head_limit = std::sqrt(3.0 / static_cast<double>(config_.channels));
    for (int i = 0; i < config_.channels; ++i)
        params_[static_cast<Eigen::Index>(head_offset() + static_cast<std::size_t>(i))] = rng.uniform(-head_limit, head_limit);
}

std::size_t DilatedCnn::layer_offset(std::size_t l) const {
    std::size_t offset = 0;
    for (std::size_t i = 0; i < l; ++i)
        offset += static_cast<std::size_t>(config_.kernel * config_.channels * layer_in_channels(i) + config_.channels);
    return offset;
}

std::size_t DilatedCnn::head_offset() const { return layer_offset(config_.dilations.size()); }

void DilatedCnn::set_parameters(const Eigen::VectorXd& params) {
    if (params.size() != params_.size()) throw std::invalid_argument("parameter vector has the wrong length");
    params_ = params;
}

DilatedCnn::LayerView DilatedCnn::layer(std::size_t l) const {
    const int in = layer_in_channels(l);
    const int out = config_.channels;
    const double* base = params_.data() + layer_offset(l);
    std::vector<Eigen::Map<const Eigen::MatrixXd>> taps;
    for (int k = 0; k < config_.kernel; ++k) taps.emplace_back(base + static_cast<std::ptrdiff_t>(k) * out * in, out, in);
    return LayerView{std::move(taps), Eigen::Map<const Eigen::VectorXd>(base + config_.kernel * out * in, out)};
}

Eigen::VectorXd DilatedCnn::run(const Eigen::MatrixXd& windows, Cache* cache, bool crop) const {
    const Eigen::Index batch = windows.rows();
    const Eigen::Index width = windows.cols();
    if (width < 1 || batch < 1) throw std::invalid_argument("CNN input must hold at least one window");
    const Eigen::Index len = crop ? std::min<Eigen::Index>(width, config_.receptive_field()) : width;

    Tensor x(1, batch * len);
    for (Eigen::Index b = 0; b < batch; ++b) x.block(0, b * len, 1, len) = windows.block(b, width - len, 1, len);

    Cache local;
    Cache& c = cache ? *cache : local;
    c.segment = len;
    c.inputs.clear();
    c.preactivations.clear();
    for (std::size_t l = 0; l < config_.dilations.size(); ++l) {
        const auto view = layer(l);
        std::vector<Eigen::MatrixXd> taps(view.taps.begin(), view.taps.end());
        Tensor z = conv1d_dilated_forward(x, taps, view.bias, config_.dilations[l], len);
        c.inputs.push_back(std::move(x));
        x = z.cwiseMax(0.0);
        c.preactivations.push_back(std::move(z));
    }
    c.last = std::move(x);

    const Eigen::Map<const Eigen::RowVectorXd> head_w(params_.data() + head_offset(), config_.channels);
    const double head_b = params_[static_cast<Eigen::Index>(head_offset()) + config_.channels];
    c.outputs.resize(batch);
    for (Eigen::Index b = 0; b < batch; ++b) c.outputs[b] = head_w.dot(c.last.col(b * len + len - 1)) + head_b;
    return c.outputs;
}

Eigen::VectorXd DilatedCnn::forward(const Eigen::MatrixXd& windows, Cache& cache) const { return run(windows, &cache, true); }

Eigen::VectorXd DilatedCnn::predict(const Eigen::MatrixXd& windows) const { return run(windows, nullptr, true); }

double DilatedCnn::predict_one(std::span<const double> window) const {
    const Eigen::Map<const Eigen::RowVectorXd> row(window.data(), static_cast<Eigen::Index>(window.size()));
    return predict(Eigen::MatrixXd(row))[0];
}

Tensor DilatedCnn::stack_output(std::span<const double> window) const {
    const Eigen::Map<const Eigen::RowVectorXd> row(window.data(), static_cast<Eigen::Index>(window.size()));
    Cache c;
    run(Eigen::MatrixXd(row), &c, false);
    return c.last;
}

Eigen::VectorXd DilatedCnn::backward(const Cache& cache, const Eigen::VectorXd& targets, double loss_scale) const {
    const Eigen::Index batch = cache.outputs.size();
    if (targets.size() != batch) throw std::invalid_argument("target count does not match the forward batch");
    const Eigen::Index len = cache.segment;
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(params_.size());

    const Eigen::VectorXd dy = loss_scale * 2.0 * (cache.outputs - targets) / static_cast<double>(batch);
    const auto head = static_cast<Eigen::Index>(head_offset());
    const Eigen::Map<const Eigen::VectorXd> head_w(params_.data() + head, config_.channels);
    Tensor da = Tensor::Zero(config_.channels, batch * len);
    for (Eigen::Index b = 0; b < batch; ++b) {
        const Eigen::Index col = b * len + len - 1;
        grad.segment(head, config_.channels) += dy[b] * cache.last.col(col);
        da.col(col) = dy[b] * head_w;
    }
    grad[head + config_.channels] = dy.sum();

    for (std::size_t l = config_.dilations.size(); l-- > 0;) {
        const Tensor dz = (da.array() * (cache.preactivations[l].array() > 0.0).cast<double>()).matrix();
        const auto view = layer(l);
        std::vector<Eigen::MatrixXd> taps(view.taps.begin(), view.taps.end());
        auto g = conv1d_dilated_backward(cache.inputs[l], taps, dz, config_.dilations[l], len);
        auto offset = static_cast<Eigen::Index>(layer_offset(l));
        for (const auto& gt : g.taps) {
            grad.segment(offset, gt.size()) = Eigen::Map<const Eigen::VectorXd>(gt.data(), gt.size());
            offset += gt.size();
        }
        grad.segment(offset, g.bias.size()) = g.bias;
        da = std::move(g.input);
    }
    return grad;
}

double DilatedCnn::loss(const Eigen::MatrixXd& windows, const Eigen::VectorXd& targets) const {
    const Eigen::VectorXd pred = predict(windows);
    return (pred - targets).squaredNorm() / static_cast<double>(targets.size());
}

std::string DilatedCnn::to_json() const {
    nlohmann::json j;
    j["format"] = "autocast-dilated-cnn";
    j["version"] = 1;
    j["seed"] = seed_;
    j["config"] = {{"input_window", config_.input_window}, {"kernel", config_.kernel},
                   {"dilations", config_.dilations},       {"channels", config_.channels},
                   {"learning_rate", config_.learning_rate}, {"batch_size", config_.batch_size},
                   {"max_epochs", config_.max_epochs},     {"patience", config_.patience},
                   {"validation_fraction", config_.validation_fraction}, {"seed", config_.seed}};
    j["parameters"] = std::vector<double>(params_.data(), params_.data() + params_.size());
    return j.dump();
}

DilatedCnn DilatedCnn::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format") != "autocast-dilated-cnn") throw std::invalid_argument("not a serialized dilated CNN");
    const auto& c = j.at("config");
    CnnConfig config;
    config.input_window = c.at("input_window").get<std::size_t>();
    config.kernel = c.at("kernel").get<int>();
    config.dilations = c.at("dilations").get<std::vector<int>>();
    config.channels = c.at("channels").get<int>();
    config.learning_rate = c.at("learning_rate").get<double>();
    config.batch_size = c.at("batch_size").get<std::size_t>();
    config.max_epochs = c.at("max_epochs").get<std::size_t>();
    config.patience = c.at("patience").get<std::size_t>();
    config.validation_fraction = c.at("validation_fraction").get<double>();
    config.seed = c.at("seed").get<std::uint64_t>();
    DilatedCnn net(config, j.at("seed").get<std::uint64_t>());
    const auto params = j.at("parameters").get<std::vector<double>>();
    net.set_parameters(Eigen::Map<const Eigen::VectorXd>(params.data(), static_cast<Eigen::Index>(params.size())));
    return net;
}

} // namespace autocast::nn
