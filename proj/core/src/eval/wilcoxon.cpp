#include "autocast/eval/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace autocast::eval {

std::vector<double> signed_rank_magnitudes(std::span<const double> d) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(d[a]) < std::abs(d[b]); });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
        i = j + 1;
    }
    return ranks;
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

} // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences, Alternative alternative,
                                    WilcoxonMethod method) {
    std::vector<double> d;
    for (double v : differences) {
        if (!std::isfinite(v)) throw std::invalid_argument("wilcoxon: non-finite difference");
        if (v != 0.0) d.push_back(v);
    }
    if (d.empty()) throw std::invalid_argument("degenerate sample");

    const std::size_t n = d.size();
    const auto ranks = signed_rank_magnitudes(d);

    // Mid-ranks are multiples of 1/2, so doubled ranks are exact integers.
    std::vector<std::int64_t> twice(n);
    std::int64_t w2 = 0;
    std::int64_t total2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        twice[i] = std::llround(2.0 * ranks[i]);
        total2 += twice[i];
        if (d[i] > 0.0) w2 += twice[i];
    }

    WilcoxonResult result;
    result.n = n;
    result.statistic = static_cast<double>(w2) / 2.0;

    const bool exact = method == WilcoxonMethod::Exact || (method == WilcoxonMethod::Auto && n <= 20);
    if (exact) {
        if (n > 62) throw std::invalid_argument("wilcoxon: exact distribution limited to n <= 62");
        // counts[s] = number of sign assignments whose doubled positive-rank sum is s.
        std::vector<double> counts(static_cast<std::size_t>(total2) + 1, 0.0);
        counts[0] = 1.0;
        std::int64_t reach = 0;
        for (std::int64_t r : twice) {
            for (std::int64_t s = reach; s >= 0; --s)
                if (counts[s] != 0.0) counts[s + r] += counts[s];
            reach += r;
        }
        double hits = 0.0;
        for (std::int64_t s = 0; s <= total2; ++s) {
            bool extreme = false;
            switch (alternative) {
            case Alternative::TwoSided: extreme = std::llabs(2 * s - total2) >= std::llabs(2 * w2 - total2); break;
            case Alternative::Greater: extreme = s >= w2; break;
            case Alternative::Less: extreme = s <= w2; break;
            }
            if (extreme) hits += counts[s];
        }
        result.p_value = std::min(1.0, std::ldexp(hits, -static_cast<int>(n)));
        result.exact = true;
        return result;
    }

    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    double tie = 0.0;
    std::vector<double> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        tie += t * t * t - t;
        i = j;
    }
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie / 48.0;
    const double w = result.statistic;
    if (var <= 0.0) {
        result.p_value = 1.0;
        return result;
    }
    const double sd = std::sqrt(var);
    double p = 1.0;
    switch (alternative) {
    case Alternative::TwoSided: {
        const double dev = std::abs(w - mean) - 0.5;
        p = dev <= 0.0 ? 1.0 : 2.0 * (1.0 - normal_cdf(dev / sd));
        break;
    }
    case Alternative::Greater: p = 1.0 - normal_cdf((w - mean - 0.5) / sd); break;
    case Alternative::Less: p = normal_cdf((w - mean + 0.5) / sd); break;
    }
    result.p_value = std::clamp(p, 0.0, 1.0);
    return result;
}

} // namespace autocast::eval
