#include "autocast/models/boosted_trees.hpp"

#include "autocast/models/iterate.hpp"
#include "autocast/models/model_id.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace autocast::models {
namespace {

constexpr double kMinGain = 1e-12;

struct Split {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const FeatureMatrix& x, const std::vector<std::vector<std::size_t>>& sorted, const BoostingParams& params)
        : x_(x), sorted_(sorted), params_(params), node_of_(x.rows, 0) {}

    RegressionTree build(std::span<const double> grad) {
        RegressionTree tree;
        auto& nodes = tree.nodes();
        nodes.assign(1, RegressionTree::Node{});
        std::fill(node_of_.begin(), node_of_.end(), 0);
        std::vector<int> frontier{0};

        for (int depth = 0; depth < params_.max_depth && !frontier.empty(); ++depth) {
            const std::size_t count_nodes = nodes.size();
            std::vector<double> sum(count_nodes, 0.0);
            std::vector<std::size_t> count(count_nodes, 0);
            for (std::size_t i = 0; i < x_.rows; ++i) {
                sum[static_cast<std::size_t>(node_of_[i])] += grad[i];
                ++count[static_cast<std::size_t>(node_of_[i])];
            }
            std::vector<char> active(count_nodes, 0);
            for (int nd : frontier)
                if (count[static_cast<std::size_t>(nd)] >= 2 * params_.min_samples_leaf) active[static_cast<std::size_t>(nd)] = 1;

            std::vector<Split> best(count_nodes);
            std::vector<double> left_sum(count_nodes);
            std::vector<std::size_t> left_count(count_nodes);
            std::vector<double> last_value(count_nodes);
            for (std::size_t f = 0; f < x_.cols; ++f) {
                std::fill(left_sum.begin(), left_sum.end(), 0.0);
                std::fill(left_count.begin(), left_count.end(), 0);
                for (std::size_t i : sorted_[f]) {
                    const auto nd = static_cast<std::size_t>(node_of_[i]);
                    if (!active[nd]) continue;
                    const double v = x_(i, f);
                    const std::size_t nl = left_count[nd];
                    const std::size_t nr = count[nd] - nl;
                    if (nl >= params_.min_samples_leaf && nr >= params_.min_samples_leaf && v > last_value[nd]) {
                        const double sl = left_sum[nd];
                        const double sr = sum[nd] - sl;
                        const double gain = sl * sl / static_cast<double>(nl) + sr * sr / static_cast<double>(nr) -
                                            sum[nd] * sum[nd] / static_cast<double>(count[nd]);
                        if (gain > kMinGain && gain > best[nd].gain) {
                            double thr = 0.5 * (last_value[nd] + v);
                            if (!(thr < v)) thr = last_value[nd];
                            best[nd] = Split{gain, static_cast<int>(f), thr};
                        }
                    }
                    left_sum[nd] += grad[i];
                    ++left_count[nd];
                    last_value[nd] = v;
                }
            }

            std::vector<int> next;
            for (int nd : frontier) {
                const auto& s = best[static_cast<std::size_t>(nd)];
                if (s.feature < 0) continue;
                const int left = static_cast<int>(nodes.size());
                nodes.push_back({});
                nodes.push_back({});
                auto& node = nodes[static_cast<std::size_t>(nd)];
                node.feature = s.feature;
                node.threshold = s.threshold;
                node.left = left;
                node.right = left + 1;
                next.push_back(left);
                next.push_back(left + 1);
            }
            for (std::size_t i = 0; i < x_.rows; ++i) {
                const auto& node = nodes[static_cast<std::size_t>(node_of_[i])];
                if (node.feature >= 0 && (node.left >= static_cast<int>(count_nodes)))
                    node_of_[i] = x_(i, static_cast<std::size_t>(node.feature)) <= node.threshold ? node.left : node.right;
            }
            frontier = std::move(next);
        }

        std::vector<double> leaf_sum(nodes.size(), 0.0);
        std::vector<std::size_t> leaf_count(nodes.size(), 0);
        for (std::size_t i = 0; i < x_.rows; ++i) {
            leaf_sum[static_cast<std::size_t>(node_of_[i])] += grad[i];
            ++leaf_count[static_cast<std::size_t>(node_of_[i])];
        }
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            if (nodes[k].feature < 0 && leaf_count[k] > 0)
                nodes[k].value = params_.learning_rate * leaf_sum[k] / static_cast<double>(leaf_count[k]);
        }
        return tree;
    }

    /// Leaf reached by each training row in the last built tree.
    const std::vector<int>& leaves() const noexcept { return node_of_; }

private:
    const FeatureMatrix& x_;
    const std::vector<std::vector<std::size_t>>& sorted_;
    const BoostingParams& params_;
    std::vector<int> node_of_;
};

} // namespace

double RegressionTree::predict(std::span<const double> x) const {
    if (nodes_.empty()) return 0.0;
    std::size_t k = 0;
    while (nodes_[k].feature >= 0)
        k = static_cast<std::size_t>(x[static_cast<std::size_t>(nodes_[k].feature)] <= nodes_[k].threshold ? nodes_[k].left
                                                                                                             : nodes_[k].right);
    return nodes_[k].value;
}

double TreeEnsemble::predict(std::span<const double> x) const {
    double v = base_score_;
    for (const auto& t : trees_) v += t.predict(x);
    return v;
}

TreeEnsemble fit_boosted_trees(const FeatureMatrix& features, std::span<const double> targets,
                               const BoostingParams& params) {
    if (features.rows == 0) throw std::invalid_argument("boosting needs at least one row");
    if (features.rows != targets.size()) throw std::invalid_argument("feature rows and targets differ");
    if (params.min_samples_leaf < 1 || params.max_depth < 0) throw std::invalid_argument("invalid boosting parameters");

    const double base = std::accumulate(targets.begin(), targets.end(), 0.0) / static_cast<double>(targets.size());
    std::vector<double> pred(features.rows, base);

    std::vector<std::vector<std::size_t>> sorted(features.cols);
    for (std::size_t f = 0; f < features.cols; ++f) {
        auto& idx = sorted[f];
        idx.resize(features.rows);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return features(a, f) < features(b, f); });
    }

    TreeBuilder builder(features, sorted, params);
    std::vector<RegressionTree> trees;
    trees.reserve(params.rounds);
    std::vector<double> grad(features.rows);
    for (std::size_t round = 0; round < params.rounds; ++round) {
        for (std::size_t i = 0; i < features.rows; ++i) grad[i] = targets[i] - pred[i];
        auto tree = builder.build(grad);
        const auto& leaves = builder.leaves();
        for (std::size_t i = 0; i < features.rows; ++i) pred[i] += tree.nodes()[static_cast<std::size_t>(leaves[i])].value;
        trees.push_back(std::move(tree));
    }
    return TreeEnsemble(base, std::move(trees));
}

TreeEnsemble fit_boosted_trees(std::span<const WindowRow> rows, const BoostingParams& params) {
    if (rows.empty()) throw std::invalid_argument("boosting needs at least one row");
    FeatureMatrix x;
    x.rows = rows.size();
    x.cols = rows.front().features.lags.size() + rows.front().features.season.size();
    x.data.reserve(x.rows * x.cols);
    std::vector<double> y;
    y.reserve(rows.size());
    for (const auto& r : rows) {
        const auto flat = r.features.flatten();
        if (flat.size() != x.cols) throw std::invalid_argument("window rows have inconsistent widths");
        x.data.insert(x.data.end(), flat.begin(), flat.end());
        y.push_back(r.target);
    }
    return fit_boosted_trees(x, y, params);
}

SharedTreeModel train_shared_trees(std::span<const SalesSeries> corpus, const BoostingParams& params,
                                   const WindowOptions& window) {
    std::vector<WindowRow> pooled;
    std::optional<Frequency> frequency;
    for (const auto& s : corpus) {
        if (frequency && *frequency != s.frequency()) throw std::invalid_argument("corpus mixes frequencies");
        frequency = s.frequency();
        const double scale = product_scale(s.values());
        std::vector<double> normalized(s.values().begin(), s.values().end());
        for (double& v : normalized) v /= scale;
        auto rows = make_window_features(normalized, s.start(), window);
        pooled.insert(pooled.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    }
    if (pooled.empty()) throw std::invalid_argument("no product has enough history for a training window");
    return SharedTreeModel{fit_boosted_trees(pooled, params), window, *frequency};
}

ForecastResult SharedTreeModel::forecast(const SalesSeries& train, std::size_t horizon) const {
    const auto m = static_cast<std::size_t>(season_length(train.frequency()));
    if (train.frequency() != frequency) throw std::invalid_argument("series frequency differs from the trained model");
    if (train.size() < m) throw std::invalid_argument("boosted trees need one season of history to forecast");
    const double scale = product_scale(train.values());
    const auto predictor = [&](std::span<const double> history, const Period& target) {
        auto f = window_for(history, target);
        for (double& v : f.lags) v /= scale;
        const double out = ensemble.predict(f.flatten());
        return (window.log_target ? std::expm1(out) : out) * scale;
    };
    return iterate_one_step(predictor, train, horizon, ModelId::BoostedTree);
}

} // namespace autocast::models
