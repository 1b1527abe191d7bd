#pragma once

#include "autocast/core/series.hpp"
#include "autocast/models/window_features.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace autocast::models {

struct BoostingParams {
    std::size_t rounds = 200;
    double learning_rate = 0.1;
    int max_depth = 3;
    std::size_t min_samples_leaf = 2;
};

/// Dense row-major feature matrix.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

class RegressionTree {
public:
    struct Node {
        int feature = -1; ///< -1 for a leaf
        double threshold = 0.0;
        int left = -1;  ///< taken when x[feature] <= threshold
        int right = -1;
        double value = 0.0;
    };

    double predict(std::span<const double> x) const;
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::vector<Node>& nodes() noexcept { return nodes_; }

private:
    std::vector<Node> nodes_;
};

/// Gradient-boosted regression trees for squared loss.
class TreeEnsemble {
public:
    TreeEnsemble() = default;
    TreeEnsemble(double base_score, std::vector<RegressionTree> trees)
        : base_score_(base_score), trees_(std::move(trees)) {}

    double predict(std::span<const double> x) const;
    double base_score() const noexcept { return base_score_; }
    const std::vector<RegressionTree>& trees() const noexcept { return trees_; }

private:
    double base_score_ = 0.0;
    std::vector<RegressionTree> trees_;
};

/**
 * Starts from the target mean and adds `rounds` depth-limited trees fitted to
 * the residuals, each scaled by the learning rate (leaf value = learning rate
 * times the mean residual in the leaf). Splits are exact greedy on raw
 * feature values with midpoint thresholds; ties keep the first feature and
 * the lowest threshold. No subsampling, so the result is deterministic.
 */
TreeEnsemble fit_boosted_trees(const FeatureMatrix& features, std::span<const double> targets,
                               const BoostingParams& params = {});
TreeEnsemble fit_boosted_trees(std::span<const WindowRow> rows, const BoostingParams& params = {});

/// A boosted model trained on windows pooled from many products, each
/// normalised by its own product_scale().
struct SharedTreeModel {
    TreeEnsemble ensemble;
    WindowOptions window;
    Frequency frequency = Frequency::Monthly;

    /// One-step-ahead iteration from the end of `train`.
    ForecastResult forecast(const SalesSeries& train, std::size_t horizon) const;
};

/// Throws std::invalid_argument when no product yields a training window.
SharedTreeModel train_shared_trees(std::span<const SalesSeries> corpus, const BoostingParams& params = {},
                                   const WindowOptions& window = {});

} // namespace autocast::models
