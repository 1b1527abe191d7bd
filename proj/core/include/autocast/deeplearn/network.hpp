#pragma once

#include "autocast/core/period.hpp"
#include "autocast/deeplearn/conv1d.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace autocast::nn {

struct CnnConfig {
    std::size_t input_window = 24;
    int kernel = 2;
    std::vector<int> dilations{1, 2, 4, 8};
    int channels = 16;
    double learning_rate = 1e-3;
    std::size_t batch_size = 32;
    std::size_t max_epochs = 100;
    std::size_t patience = 5;
    /// Fraction of windows (latest target periods) held out for early stopping.
    double validation_fraction = 0.1;
    std::uint64_t seed = 42;

    /// 24-period window for monthly data, 104 for weekly.
    static CnnConfig for_frequency(Frequency frequency);

    /// 1 + sum (kernel-1) * dilation.
    int receptive_field() const noexcept;
    /// Throws std::invalid_argument when the receptive field exceeds the window.
    void validate() const;
};

/**
 * Stack of causal dilated convolutions (ReLU after each) followed by a dense
 * head reading the last time step. Maps a window of normalised past values
 * to the next normalised value.
 *
 * All weights live in one flat parameter vector: per layer the taps
 * (column-major, out x in) then the bias, and finally the head weights and bias.
 */
class DilatedCnn {
public:
    /// He-uniform initialisation from a SplitMix64 stream seeded with `seed`.
    DilatedCnn(CnnConfig config, std::uint64_t seed);

    const CnnConfig& config() const noexcept { return config_; }
    std::size_t parameter_count() const noexcept { return static_cast<std::size_t>(params_.size()); }
    const Eigen::VectorXd& parameters() const noexcept { return params_; }
    void set_parameters(const Eigen::VectorXd& params);

    struct Cache {
        Eigen::Index segment = 0;
        std::vector<Tensor> inputs;         // input of each conv layer
        std::vector<Tensor> preactivations; // output of each conv layer before ReLU
        Tensor last;                        // final activations
        Eigen::VectorXd outputs;
    };

    /// One prediction per row of `windows` (rows are windows, oldest value
    /// first). Only the trailing receptive_field() values of each row can
    /// influence its prediction, so only those are fed through the stack.
    Eigen::VectorXd forward(const Eigen::MatrixXd& windows, Cache& cache) const;
    Eigen::VectorXd predict(const Eigen::MatrixXd& windows) const;
    double predict_one(std::span<const double> window) const;

    /// Gradient of loss_scale * mean((prediction - target)^2).
    Eigen::VectorXd backward(const Cache& cache, const Eigen::VectorXd& targets, double loss_scale = 1.0) const;

    double loss(const Eigen::MatrixXd& windows, const Eigen::VectorXd& targets) const;

    /// Full-length activations of the last conv layer for one window
    /// (channels x length), without cropping.
    Tensor stack_output(std::span<const double> window) const;

    /// Flat JSON blob: config echo, seed and parameters.
    std::string to_json() const;
    static DilatedCnn from_json(const std::string& text);

    std::uint64_t seed() const noexcept { return seed_; }

private:
    struct LayerView {
        std::vector<Eigen::Map<const Eigen::MatrixXd>> taps;
        Eigen::Map<const Eigen::VectorXd> bias;
    };

    LayerView layer(std::size_t l) const;
    std::size_t layer_offset(std::size_t l) const;
    std::size_t head_offset() const;
    int layer_in_channels(std::size_t l) const noexcept { return l == 0 ? 1 : config_.channels; }
    Eigen::VectorXd run(const Eigen::MatrixXd& windows, Cache* cache, bool crop) const;

    CnnConfig config_;
    std::uint64_t seed_;
    Eigen::VectorXd params_;
};

} // namespace autocast::nn
