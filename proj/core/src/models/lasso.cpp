#include "autocast/models/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace autocast::models {
namespace {

double soft_threshold(double value, double threshold) {
    if (value > threshold) return value - threshold;
    if (value < -threshold) return value + threshold;
    return 0.0;
}

} // namespace

double lasso_objective(const Eigen::MatrixXd& design, const Eigen::VectorXd& target, const Eigen::VectorXd& beta,
                       double lambda, std::optional<Eigen::Index> intercept_column) {
    const auto n = static_cast<double>(design.rows());
    const Eigen::VectorXd r = target - design * beta;
    double penalty = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j)
        if (!intercept_column || *intercept_column != j) penalty += std::abs(beta[j]);
    return r.squaredNorm() / (2.0 * n) + lambda * penalty;
}

double lasso_lambda_max(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                        std::optional<Eigen::Index> intercept_column) {
    const auto n = static_cast<double>(design.rows());
    Eigen::VectorXd r = target;
    if (intercept_column) r.array() -= target.mean();
    double best = 0.0;
    for (Eigen::Index j = 0; j < design.cols(); ++j) {
        if (intercept_column && *intercept_column == j) continue;
        best = std::max(best, std::abs(design.col(j).dot(r)) / n);
    }
    return best;
}

std::vector<double> log_lambda_grid(double lambda_max, std::size_t points, double ratio) {
    std::vector<double> grid;
    if (points == 0) return grid;
    if (points == 1) return {lambda_max};
    const double step = std::log(ratio) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) grid.push_back(lambda_max * std::exp(step * static_cast<double>(i)));
    return grid;
}

LassoResult lasso_coordinate_descent(const Eigen::MatrixXd& design, const Eigen::VectorXd& target, double lambda,
                                     const LassoOptions& options) {
    if (design.rows() != target.size()) throw std::invalid_argument("design rows and target length differ");
    if (design.rows() == 0) throw std::invalid_argument("lasso needs at least one row");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
    if (!target.allFinite()) throw std::domain_error("lasso target holds non-finite values");

    const Eigen::Index p = design.cols();
    const auto n = static_cast<double>(design.rows());
    Eigen::VectorXd col_sq(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        if (!design.col(j).allFinite()) throw std::domain_error("lasso column " + std::to_string(j) + " is non-finite");
        col_sq[j] = design.col(j).squaredNorm() / n;
    }

    // Intercept first, then the penalised columns in index order.
    std::vector<Eigen::Index> sweep_order;
    if (options.intercept_column) sweep_order.push_back(*options.intercept_column);
    for (Eigen::Index j = 0; j < p; ++j)
        if (!options.intercept_column || *options.intercept_column != j) sweep_order.push_back(j);

    LassoResult result;
    result.coefficients = Eigen::VectorXd::Zero(p);
    auto& beta = result.coefficients;
    Eigen::VectorXd residual = target;

    for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
        double max_change = 0.0;
        for (Eigen::Index j : sweep_order) {
            if (col_sq[j] == 0.0) continue;
            const double rho = design.col(j).dot(residual) / n + col_sq[j] * beta[j];
            const bool penalised = !options.intercept_column || *options.intercept_column != j;
            const double updated = (penalised ? soft_threshold(rho, lambda) : rho) / col_sq[j];
            if (!std::isfinite(updated))
                throw std::domain_error("lasso update for column " + std::to_string(j) + " is non-finite");
            const double change = updated - beta[j];
            if (change != 0.0) {
                residual.noalias() -= change * design.col(j);
                beta[j] = updated;
                max_change = std::max(max_change, std::abs(change));
            }
        }
        result.sweeps = sweep + 1;
        if (options.record_objective)
            result.objective_trace.push_back(lasso_objective(design, target, beta, lambda, options.intercept_column));
        if (max_change < options.tolerance) {
            result.converged = true;
            break;
        }
    }
    return result;
}

} // namespace autocast::models
