#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace autocast::nn {

class Adam {
public:
    Adam(Eigen::Index size, double learning_rate, double beta1 = 0.9, double beta2 = 0.999, double epsilon = 1e-8);

    void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad);
    std::size_t steps() const noexcept { return t_; }

private:
    double lr_, beta1_, beta2_, eps_;
    Eigen::VectorXd m_, v_;
    std::size_t t_ = 0;
};

} // namespace autocast::nn
