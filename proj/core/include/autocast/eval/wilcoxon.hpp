#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace autocast::eval {

enum class Alternative { TwoSided, Less, Greater };
enum class WilcoxonMethod { Auto, Exact, Normal };

struct WilcoxonResult {
    /// Sum of the ranks of the positive differences.
    double statistic = 0.0;
    double p_value = 1.0;
    /// Non-zero differences used.
    std::size_t n = 0;
    bool exact = false;
};

/**
 * Wilcoxon signed-rank test on paired differences.
 *
 * Exact zeros are dropped, |d| is ranked with mid-ranks for ties. With Auto,
 * n <= 20 gives the exact null distribution over all 2^n sign assignments;
 * larger samples use the normal approximation with tie and continuity
 * corrections. Throws std::invalid_argument("degenerate sample") when every
 * difference is zero.
 */
WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences, Alternative alternative = Alternative::TwoSided,
                                    WilcoxonMethod method = WilcoxonMethod::Auto);

/// Mid-ranks of |d| for the non-zero differences, in input order.
std::vector<double> signed_rank_magnitudes(std::span<const double> nonzero_differences);

} // namespace autocast::eval
