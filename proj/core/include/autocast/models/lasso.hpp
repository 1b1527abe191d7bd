#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

namespace autocast::models {

struct LassoOptions {
    /// Converged when the largest coefficient change in a sweep is below this.
    double tolerance = 1e-8;
    std::size_t max_sweeps = 10000;
    /// Column holding the (unpenalised) intercept, if any.
    std::optional<Eigen::Index> intercept_column;
    /// Record the objective after every sweep.
    bool record_objective = false;
};

struct LassoResult {
    Eigen::VectorXd coefficients;
    std::size_t sweeps = 0;
    bool converged = false;
    std::vector<double> objective_trace;
};

/**
 * Minimises (1/2n)||y - M b||^2 + lambda * sum_{j != intercept} |b_j| by cyclic
 * coordinate descent with soft-thresholding, starting from b = 0.
 *
 * Columns are expected to be standardised, but the update divides by each
 * column's own (1/n)||M_j||^2 so unscaled columns still give the exact
 * minimiser. All-zero columns keep a zero coefficient. Throws
 * std::domain_error naming the column when an update turns non-finite.
 */
LassoResult lasso_coordinate_descent(const Eigen::MatrixXd& design, const Eigen::VectorXd& target, double lambda,
                                     const LassoOptions& options = {});

double lasso_objective(const Eigen::MatrixXd& design, const Eigen::VectorXd& target, const Eigen::VectorXd& beta,
                       double lambda, std::optional<Eigen::Index> intercept_column);

/// Smallest lambda at which every penalised coefficient is zero:
/// max_j |(1/n) M_j^T (y - ybar)| over penalised columns.
double lasso_lambda_max(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                        std::optional<Eigen::Index> intercept_column);

/// `points` values log-spaced from `lambda_max` down to `lambda_max * ratio`.
std::vector<double> log_lambda_grid(double lambda_max, std::size_t points = 10, double ratio = 1e-4);

} // namespace autocast::models
