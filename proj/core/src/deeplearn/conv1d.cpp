#include "autocast/deeplearn/conv1d.hpp"

#include <stdexcept>
#include <string>

namespace autocast::nn {
namespace {

Eigen::Index resolve_segment(const Tensor& x, Eigen::Index segment) {
    if (segment <= 0) return x.cols();
    if (x.cols() % segment != 0) throw std::invalid_argument("tensor width is not a multiple of the segment length");
    return segment;
}

// Inverse placement of shift_right: column t receives column t + offset of the same segment.
Tensor shift_left(const Tensor& x, Eigen::Index offset, Eigen::Index segment) {
    Tensor out = Tensor::Zero(x.rows(), x.cols());
    if (offset >= segment) return out;
    for (Eigen::Index s = 0; s < x.cols(); s += segment)
        out.middleCols(s, segment - offset) = x.middleCols(s + offset, segment - offset);
    return out;
}

void check_taps(const Tensor& input, std::span<const Eigen::MatrixXd> taps, int dilation) {
    if (taps.empty()) throw std::invalid_argument("convolution needs at least one tap");
    if (dilation < 1) throw std::invalid_argument("dilation must be at least 1");
    for (const auto& w : taps) {
        if (w.cols() != input.rows() || w.rows() != taps.front().rows())
            throw std::invalid_argument("convolution tap shape " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                                        " does not match " + std::to_string(input.rows()) + " input channels");
    }
}

} // namespace

Tensor shift_right(const Tensor& x, Eigen::Index offset, Eigen::Index segment) {
    segment = resolve_segment(x, segment);
    if (offset == 0) return x;
    Tensor out = Tensor::Zero(x.rows(), x.cols());
    if (offset >= segment) return out;
    for (Eigen::Index s = 0; s < x.cols(); s += segment)
        out.middleCols(s + offset, segment - offset) = x.middleCols(s, segment - offset);
    return out;
}

Tensor conv1d_dilated_forward(const Tensor& input, std::span<const Eigen::MatrixXd> taps, const Eigen::VectorXd& bias,
                              int dilation, Eigen::Index segment) {
    check_taps(input, taps, dilation);
    segment = resolve_segment(input, segment);
    if (bias.size() != taps.front().rows()) throw std::invalid_argument("bias length does not match output channels");
    const auto kernel = static_cast<Eigen::Index>(taps.size());
    Tensor out = bias.replicate(1, input.cols());
    for (Eigen::Index k = 0; k < kernel; ++k) {
        const Eigen::Index offset = (kernel - 1 - k) * dilation;
        if (offset == 0)
            out.noalias() += taps[static_cast<std::size_t>(k)] * input;
        else if (offset < segment)
            out.noalias() += taps[static_cast<std::size_t>(k)] * shift_right(input, offset, segment);
    }
    return out;
}

Conv1dGradients conv1d_dilated_backward(const Tensor& input, std::span<const Eigen::MatrixXd> taps,
                                        const Tensor& grad_output, int dilation, Eigen::Index segment) {
    check_taps(input, taps, dilation);
    segment = resolve_segment(input, segment);
    if (grad_output.cols() != input.cols() || grad_output.rows() != taps.front().rows())
        throw std::invalid_argument("output gradient shape does not match the convolution");
    const auto kernel = static_cast<Eigen::Index>(taps.size());
    Conv1dGradients g;
    g.input = Tensor::Zero(input.rows(), input.cols());
    g.bias = grad_output.rowwise().sum();
    for (Eigen::Index k = 0; k < kernel; ++k) {
        const Eigen::Index offset = (kernel - 1 - k) * dilation;
        const auto& w = taps[static_cast<std::size_t>(k)];
        if (offset >= segment) {
            g.taps.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
            continue;
        }
        if (offset == 0) {
            g.taps.push_back(grad_output * input.transpose());
            g.input.noalias() += w.transpose() * grad_output;
        } else {
            g.taps.push_back(grad_output * shift_right(input, offset, segment).transpose());
            g.input += shift_left(w.transpose() * grad_output, offset, segment);
        }
    }
    return g;
}

} // namespace autocast::nn
