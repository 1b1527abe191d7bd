#include "autocast/models/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace autocast::models {

NelderMeadResult nelder_mead(const Objective& objective, std::vector<double> x0, const NelderMeadOptions& options) {
    const std::size_t n = x0.size();
    NelderMeadResult result;
    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = objective(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    if (n == 0) {
        result.value = eval(x0);
        result.x = std::move(x0);
        result.evaluations = evals;
        result.converged = true;
        return result;
    }

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    bool converged = false;

    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        {
            std::vector<std::vector<double>> s(n + 1);
            std::vector<double> v(n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                s[i] = std::move(simplex[order[i]]);
                v[i] = values[order[i]];
            }
            simplex = std::move(s);
            values = std::move(v);
        }

        const double best = values.front();
        const double worst = values.back();
        double diameter = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[0][j]));
        if (std::isfinite(worst) &&
            worst - best <= options.f_tolerance * (1.0 + std::abs(best)) && diameter <= options.x_tolerance) {
            converged = true;
            break;
        }
        if (evals >= options.max_evaluations) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        for (double& c : centroid) c /= static_cast<double>(n);

        const auto& xw = simplex[n];
        for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + (centroid[j] - xw[j]);
        const double fr = eval(xr);

        if (fr < values[0]) {
            for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + 2.0 * (centroid[j] - xw[j]);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
            continue;
        }
        if (fr < values[n - 1]) {
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }
        bool accept = false;
        if (fr < values[n]) {
            for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] + 0.5 * (xr[j] - centroid[j]);
            const double fc = eval(xc);
            if (fc <= fr) {
                simplex[n] = xc;
                values[n] = fc;
                accept = true;
            }
        } else {
            for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] + 0.5 * (xw[j] - centroid[j]);
            const double fc = eval(xc);
            if (fc < values[n]) {
                simplex[n] = xc;
                values[n] = fc;
                accept = true;
            }
        }
        if (!accept) {
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                values[i] = eval(simplex[i]);
            }
        }
    }

    result.x = simplex[0];
    result.value = values[0];
    result.evaluations = evals;
    result.converged = converged;
    return result;
}

} // namespace autocast::models
