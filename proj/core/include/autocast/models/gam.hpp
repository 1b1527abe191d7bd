#pragma once

#include "autocast/core/series.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace autocast::models {

/// Known values of external regressors X(t), one row per period starting at
/// the training start. Rows must also cover every forecast period.
struct ExternalRegressors {
    std::vector<std::string> names;
    Eigen::MatrixXd values;
};

struct GamOptions {
    /// Fourier pairs; 0 selects 3 for monthly and 10 for weekly data.
    int fourier_order = 0;
    /// Evenly spaced knots (boundaries included) of the cubic B-spline basis.
    int spline_knots = 5;
    /// Fixed penalty; when empty lambda is chosen on the last 20% of training rows.
    std::optional<double> lambda;
    /// Candidate penalties; empty means 10 log-spaced values below lambda_max.
    std::vector<double> lambda_grid;
};

enum class GamTerm { Intercept, LinearTrend, ExpTrend, Fourier, External, Spline };

/**
 * Additive decomposition fitted by lasso:
 *
 *   f(t) = b0 + trend(t) + seasonal(t) + external(t) + spline(t)
 *
 * with trend = {t, exp(t/n) - 1}, seasonal = K sine/cosine pairs at the
 * seasonal frequency, and a clamped cubic B-spline basis with knots+2
 * columns. The spline basis is held at its boundary value outside the
 * training range. Coefficients are on the raw (unstandardised) columns.
 */
struct GamDesign {
    Frequency frequency = Frequency::Monthly;
    /// Seasonal slot of the first training period.
    int start_slot = 0;
    std::size_t n_train = 0;
    int fourier_order = 0;
    int spline_knots = 0;
    std::size_t n_external = 0;
    std::vector<GamTerm> terms;
    /// Raw design rows of the training periods.
    Eigen::MatrixXd matrix;
    Eigen::VectorXd coefficients;
    double lambda = 0.0;

    std::size_t column_count() const noexcept { return terms.size(); }

    /// Raw design row for period offset t from the training start.
    Eigen::RowVectorXd row(std::size_t t, const ExternalRegressors* external = nullptr) const;
};

GamDesign fit_gam(const SalesSeries& train, const GamOptions& options = {},
                  const ExternalRegressors* external = nullptr);

/// Forecast of the `horizon` periods after training, floored at zero.
std::vector<double> gam_forecast(const GamDesign& design, std::size_t horizon,
                                 const ExternalRegressors* external = nullptr);

/// Per-period contributions over the training range.
struct GamDecomposition {
    std::vector<double> trend;    ///< intercept + linear + exponential + spline
    std::vector<double> seasonal; ///< Fourier terms
    std::vector<double> external; ///< X(t) terms
    std::vector<double> fitted;
    std::vector<double> residual; ///< observed - fitted
};

GamDecomposition gam_decompose(const GamDesign& design, std::span<const double> observed,
                               const ExternalRegressors* external = nullptr);

} // namespace autocast::models
