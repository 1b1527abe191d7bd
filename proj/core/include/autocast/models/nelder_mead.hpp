#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace autocast::models {

struct NelderMeadOptions {
    std::size_t max_evaluations = 2000;
    /// Stop when the spread of simplex values falls below this (absolute + relative).
    double f_tolerance = 1e-10;
    /// ...and the simplex diameter falls below this.
    double x_tolerance = 1e-8;
    /// Offset of the initial simplex vertices from x0 along each axis.
    double initial_step = 0.1;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free simplex minimisation (standard reflection/expansion/
/// contraction/shrink coefficients 1, 2, 0.5, 0.5). Infinite objective values
/// are allowed and act as barriers.
NelderMeadResult nelder_mead(const Objective& objective, std::vector<double> x0,
                             const NelderMeadOptions& options = {});

} // namespace autocast::models
