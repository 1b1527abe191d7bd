#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace autocast::nn {

/// Channels x time.
using Tensor = Eigen::MatrixXd;

/**
 * Causal dilated 1-D convolution with zero left-padding.
 *
 * taps[k] (out x in) multiplies input[t - (kernel-1-k) * dilation], so the
 * last tap reads the current step and output[t] only sees
 * input[t - (kernel-1)*dilation .. t]. The input may hold several windows
 * side by side, each `segment` columns wide; taps never read across windows.
 * Output length equals input length.
 */
Tensor conv1d_dilated_forward(const Tensor& input, std::span<const Eigen::MatrixXd> taps, const Eigen::VectorXd& bias,
                              int dilation, Eigen::Index segment = 0);

struct Conv1dGradients {
    Tensor input;
    std::vector<Eigen::MatrixXd> taps;
    Eigen::VectorXd bias;
};

/// Gradients of a scalar loss given d(loss)/d(output).
Conv1dGradients conv1d_dilated_backward(const Tensor& input, std::span<const Eigen::MatrixXd> taps,
                                        const Tensor& grad_output, int dilation, Eigen::Index segment = 0);

/// Copy of `x` shifted right by `offset` columns inside each segment, zero filled.
Tensor shift_right(const Tensor& x, Eigen::Index offset, Eigen::Index segment);

} // namespace autocast::nn
