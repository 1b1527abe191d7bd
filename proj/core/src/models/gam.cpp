#include "autocast/models/gam.hpp"

#include "autocast/models/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace autocast::models {
namespace {

constexpr int kCubic = 3;

std::vector<double> spline_knot_vector(int knots, double upper) {
    std::vector<double> t;
    for (int i = 0; i < kCubic; ++i) t.push_back(0.0);
    for (int i = 0; i < knots; ++i) t.push_back(upper * static_cast<double>(i) / static_cast<double>(knots - 1));
    for (int i = 0; i < kCubic; ++i) t.push_back(upper);
    return t;
}

// Clamped cubic B-spline basis (Cox-de Boor); knots+2 functions summing to one.
std::vector<double> spline_basis(double x, int knots, double upper) {
    const auto t = spline_knot_vector(knots, upper);
    const std::size_t count = static_cast<std::size_t>(knots + 2);
    std::vector<double> out(count, 0.0);
    if (upper <= 0.0) {
        out[0] = 1.0;
        return out;
    }
    x = std::clamp(x, 0.0, upper);
    if (x >= upper) {
        out.back() = 1.0;
        return out;
    }
    // Degree-0 basis over the knot spans.
    std::vector<double> basis(t.size() - 1, 0.0);
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] <= x && x < t[i + 1]) basis[i] = 1.0;
    for (int degree = 1; degree <= kCubic; ++degree) {
        std::vector<double> next(t.size() - 1 - static_cast<std::size_t>(degree), 0.0);
        for (std::size_t i = 0; i < next.size(); ++i) {
            double v = 0.0;
            const double left = t[i + static_cast<std::size_t>(degree)] - t[i];
            if (left > 0.0) v += (x - t[i]) / left * basis[i];
            const double right = t[i + static_cast<std::size_t>(degree) + 1] - t[i + 1];
            if (right > 0.0) v += (t[i + static_cast<std::size_t>(degree) + 1] - x) / right * basis[i + 1];
            next[i] = v;
        }
        basis = std::move(next);
    }
    for (std::size_t i = 0; i < count; ++i) out[i] = basis[i];
    return out;
}

GamDesign layout(const SalesSeries& train, const GamOptions& options, const ExternalRegressors* external) {
    GamDesign d;
    d.frequency = train.frequency();
    d.start_slot = train.start().season_slot();
    d.n_train = train.size();
    d.fourier_order = options.fourier_order > 0 ? options.fourier_order
                                                : (train.frequency() == Frequency::Monthly ? 3 : 10);
    d.spline_knots = options.spline_knots;
    if (d.spline_knots < 2) throw std::invalid_argument("GAM needs at least 2 spline knots");
    d.n_external = external ? static_cast<std::size_t>(external->values.cols()) : 0;
    if (external && external->values.rows() < static_cast<Eigen::Index>(train.size()))
        throw std::invalid_argument("external regressors do not cover the training range");

    d.terms.push_back(GamTerm::Intercept);
    d.terms.push_back(GamTerm::LinearTrend);
    d.terms.push_back(GamTerm::ExpTrend);
    for (int k = 0; k < 2 * d.fourier_order; ++k) d.terms.push_back(GamTerm::Fourier);
    for (std::size_t k = 0; k < d.n_external; ++k) d.terms.push_back(GamTerm::External);
    for (int k = 0; k < d.spline_knots + 2; ++k) d.terms.push_back(GamTerm::Spline);

    d.matrix.resize(static_cast<Eigen::Index>(d.n_train), static_cast<Eigen::Index>(d.terms.size()));
    for (std::size_t t = 0; t < d.n_train; ++t) d.matrix.row(static_cast<Eigen::Index>(t)) = d.row(t, external);
    if (!d.matrix.allFinite()) throw std::domain_error("GAM design holds non-finite entries");
    return d;
}

struct Standardized {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd mean;
    Eigen::VectorXd scale; // 0 marks an inactive (constant) column
};

Standardized standardize(const Eigen::MatrixXd& raw) {
    Standardized s{raw, Eigen::VectorXd::Zero(raw.cols()), Eigen::VectorXd::Zero(raw.cols())};
    const auto n = static_cast<double>(raw.rows());
    for (Eigen::Index j = 1; j < raw.cols(); ++j) {
        const double mean = raw.col(j).mean();
        const double sd = std::sqrt((raw.col(j).array() - mean).square().sum() / n);
        if (sd > 1e-10 * std::max(1.0, std::abs(mean))) {
            s.matrix.col(j) = (raw.col(j).array() - mean) / sd;
            s.mean[j] = mean;
            s.scale[j] = sd;
        } else {
            s.matrix.col(j).setZero();
        }
    }
    s.matrix.col(0).setOnes();
    return s;
}

Eigen::VectorXd fit_coefficients(const Eigen::MatrixXd& raw, const Eigen::VectorXd& y, double lambda) {
    const auto s = standardize(raw);
    LassoOptions opts;
    opts.intercept_column = 0;
    const auto res = lasso_coordinate_descent(s.matrix, y, lambda, opts);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(raw.cols());
    double intercept = res.coefficients[0];
    for (Eigen::Index j = 1; j < raw.cols(); ++j) {
        if (s.scale[j] == 0.0) continue;
        beta[j] = res.coefficients[j] / s.scale[j];
        intercept -= beta[j] * s.mean[j];
    }
    beta[0] = intercept;
    return beta;
}

Eigen::VectorXd to_vector(std::span<const double> v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

GamDesign fit_fixed(const SalesSeries& train, const GamOptions& options, const ExternalRegressors* external,
                    double lambda) {
    auto d = layout(train, options, external);
    d.lambda = lambda;
    d.coefficients = fit_coefficients(d.matrix, to_vector(train.values()), lambda);
    return d;
}

double select_lambda(const SalesSeries& train, const GamDesign& full, const GamOptions& options,
                     const ExternalRegressors* external) {
    std::vector<double> grid = options.lambda_grid;
    if (grid.empty()) {
        const auto s = standardize(full.matrix);
        const double lmax = lasso_lambda_max(s.matrix, to_vector(train.values()), 0);
        grid = log_lambda_grid(lmax > 0.0 ? lmax : 1.0);
    }
    std::sort(grid.begin(), grid.end(), std::greater<>());
    const std::size_t n = train.size();
    const std::size_t holdout = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(0.2 * static_cast<double>(n))));
    if (n < holdout + 6) return grid[grid.size() / 2];

    const auto prefix = train.prefix(n - holdout);
    const auto actual = train.values().subspan(n - holdout);
    double best_err = std::numeric_limits<double>::infinity();
    double best_lambda = grid.front();
    for (double lambda : grid) {
        const auto d = fit_fixed(prefix, options, external, lambda);
        const auto pred = gam_forecast(d, holdout, external);
        double err = 0.0;
        for (std::size_t i = 0; i < holdout; ++i) err += (actual[i] - pred[i]) * (actual[i] - pred[i]);
        if (err < best_err) {
            best_err = err;
            best_lambda = lambda;
        }
    }
    return best_lambda;
}

} // namespace

Eigen::RowVectorXd GamDesign::row(std::size_t t, const ExternalRegressors* external) const {
    Eigen::RowVectorXd r(static_cast<Eigen::Index>(terms.size()));
    const int m = season_length(frequency);
    const double td = static_cast<double>(t);
    Eigen::Index c = 0;
    r[c++] = 1.0;
    r[c++] = td;
    r[c++] = std::exp(td / static_cast<double>(n_train)) - 1.0;
    const auto slot = static_cast<double>((static_cast<std::size_t>(start_slot) + t) % static_cast<std::size_t>(m));
    for (int k = 1; k <= fourier_order; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) * slot / static_cast<double>(m);
        r[c++] = std::sin(angle);
        r[c++] = std::cos(angle);
    }
    if (n_external > 0) {
        if (!external || external->values.rows() <= static_cast<Eigen::Index>(t) ||
            external->values.cols() != static_cast<Eigen::Index>(n_external))
            throw std::invalid_argument("external regressors missing for period offset " + std::to_string(t));
        for (std::size_t k = 0; k < n_external; ++k) r[c++] = external->values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(k));
    }
    const auto basis = spline_basis(td, spline_knots, static_cast<double>(n_train - 1));
    for (double b : basis) r[c++] = b;
    return r;
}

GamDesign fit_gam(const SalesSeries& train, const GamOptions& options, const ExternalRegressors* external) {
    if (train.size() < 12) throw std::invalid_argument("GAM needs at least 12 observations");
    if (options.lambda) return fit_fixed(train, options, external, *options.lambda);
    const auto full = layout(train, options, external);
    const double lambda = select_lambda(train, full, options, external);
    return fit_fixed(train, options, external, lambda);
}

std::vector<double> gam_forecast(const GamDesign& design, std::size_t horizon, const ExternalRegressors* external) {
    std::vector<double> out(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
        const double v = design.row(design.n_train + h, external).dot(design.coefficients);
        out[h] = std::isfinite(v) ? std::max(0.0, v) : 0.0;
    }
    return out;
}

GamDecomposition gam_decompose(const GamDesign& design, std::span<const double> observed,
                               const ExternalRegressors* external) {
    GamDecomposition out;
    const std::size_t n = observed.size();
    out.trend.assign(n, 0.0);
    out.seasonal.assign(n, 0.0);
    out.external.assign(n, 0.0);
    out.fitted.assign(n, 0.0);
    out.residual.assign(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        const auto r = design.row(t, external);
        for (std::size_t j = 0; j < design.terms.size(); ++j) {
            const double v = r[static_cast<Eigen::Index>(j)] * design.coefficients[static_cast<Eigen::Index>(j)];
            switch (design.terms[j]) {
            case GamTerm::Fourier: out.seasonal[t] += v; break;
            case GamTerm::External: out.external[t] += v; break;
            default: out.trend[t] += v; break;
            }
        }
        out.fitted[t] = out.trend[t] + out.seasonal[t] + out.external[t];
        out.residual[t] = observed[t] - out.fitted[t];
    }
    return out;
}

} // namespace autocast::models
